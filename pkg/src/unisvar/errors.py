"""Exception hierarchy shared across the package.

Every domain failure raised by the library derives from UnisvarError so the
command line and the HTTP service can map it to a single error channel
(exit code 1, HTTP 400).
"""


class UnisvarError(Exception):
    """Base class for all domain errors."""

    kind = "domain"

    def payload(self):
        return {"error": self.kind, "message": str(self)}


class BudgetExceededError(UnisvarError):
    """An enumeration would scan more candidate tuples than the budget allows."""

    kind = "budget"

    def __init__(self, size, budget):
        super().__init__(
            f"search space of {size} candidate tuples exceeds budget {budget}"
        )
        self.size = size
        self.budget = budget

    def payload(self):
        data = super().payload()
        data["search_space"] = self.size
        data["budget"] = self.budget
        return data
