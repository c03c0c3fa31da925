"""Brute-force finite-field engines: variety points, fibres, and
deduplicated chart-union counts.

The candidate space of a mast is GF(q)^(number of detour coordinates),
scanned in lexicographic order.  Parallel runs partition the space into
disjoint contiguous blocks and merge results in block order, so the output
never depends on the worker count.
"""

from concurrent.futures import ProcessPoolExecutor

from .errors import BudgetExceededError, UnisvarError
from .grassmann import submodule_from_point
from .modvar import is_isomorphic, module_from_point
from .uniserial import masts, variety_equations

DEFAULT_BUDGET = 2**22


class EnumerationError(UnisvarError):
    pass


def _require_prime_field(sys, q):
    modulus = sys.field.modulus
    if modulus is None:
        raise EnumerationError("enumeration needs a prime field, not Q")
    if q is not None and q != modulus:
        raise EnumerationError(
            f"system is over GF({modulus}), not GF({q})"
        )
    return modulus


def _tuple_of_index(index, q, nvars):
    digits = [0] * nvars
    for slot in range(nvars - 1, -1, -1):
        index, digits[slot] = divmod(index, q)
    return digits


def _scan_block(args):
    polynomials, variables, q, start, stop = args
    hits = []
    nvars = len(variables)
    for index in range(start, stop):
        digits = _tuple_of_index(index, q, nvars)
        point = {
            var: value for var, value in zip(variables, digits) if value
        }
        if all(poly.field.is_zero(poly.evaluate(point)) for poly in polynomials):
            hits.append(tuple(digits))
    return hits


def enumerate_points(sys, mast, q=None, budget=DEFAULT_BUDGET, jobs=1):
    """All points of the variety over GF(q), in lexicographic order."""
    q = _require_prime_field(sys, q)
    system = variety_equations(sys, mast)
    variables = system.variables
    size = q ** len(variables)
    if size > budget:
        raise BudgetExceededError(size, budget)
    task = (list(system.polynomials), list(variables), q)
    if jobs <= 1 or size < 2 * jobs:
        solutions = _scan_block(task + (0, size))
    else:
        step = -(-size // jobs)
        blocks = [
            task + (start, min(start + step, size))
            for start in range(0, size, step)
        ]
        solutions = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for block_hits in pool.map(_scan_block, blocks):
                solutions.extend(block_hits)
    return [
        {var: value for var, value in zip(variables, digits) if value}
        for digits in solutions
    ]


class Fibre:
    """Points whose modules share one isomorphism class."""

    def __init__(self, points, representative):
        self.points = points
        self.representative = representative


class FibrePartition:
    def __init__(self, fibres):
        self.fibres = tuple(fibres)

    def sizes(self):
        return [len(f.points) for f in self.fibres]

    def all_singletons(self):
        return all(len(f.points) == 1 for f in self.fibres)


def fibres(sys, mast, q=None, budget=DEFAULT_BUDGET, jobs=1, seed=0):
    """Partition the enumerated points by isomorphism of their modules."""
    points = enumerate_points(sys, mast, q, budget, jobs)
    groups = []
    for point in points:
        module = module_from_point(sys, mast, point)
        for group in groups:
            if is_isomorphic(group.representative, module, seed=seed):
                group.points.append(point)
                break
        else:
            groups.append(Fibre([point], module))
    return FibrePartition(groups)


class ChartUnionCount:
    """Total, per-chart, and pairwise-overlap counts of chart subspaces."""

    def __init__(self, total, charts, overlaps):
        self.total = total
        self.charts = charts
        self.overlaps = overlaps


def count_uniserial_subspaces(sys, series, q=None, budget=DEFAULT_BUDGET, jobs=1):
    """Deduplicated count of the chart images over all masts of the series.

    Chart images are subspaces in canonical echelon form, so cross-chart
    deduplication is exact; overlap sizes come from key-set intersections.
    """
    q = _require_prime_field(sys, q)
    chart_keys = []
    for mast in masts(sys, series):
        keys = set()
        for point in enumerate_points(sys, mast, q, budget, jobs):
            space = submodule_from_point(sys, mast, point, check=False)
            keys.add(space.key())
        chart_keys.append((mast.text(), keys))
    union = set()
    for _, keys in chart_keys:
        union |= keys
    charts = [(text, len(keys)) for text, keys in chart_keys]
    overlaps = []
    for i in range(len(chart_keys)):
        for j in range(i + 1, len(chart_keys)):
            overlaps.append(
                (
                    chart_keys[i][0],
                    chart_keys[j][0],
                    len(chart_keys[i][1] & chart_keys[j][1]),
                )
            )
    return ChartUnionCount(len(union), charts, overlaps)
