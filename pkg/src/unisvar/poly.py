"""Sparse multivariate polynomials in the detour coordinates.

Variables are the coordinates k[i;alpha;m] attached to a mast's detour
table: the coefficient with which the detour (alpha, p_m) re-enters the
mast at position i.  Monomials are kept sorted, coefficients never zero.
"""

from dataclasses import dataclass

from .errors import UnisvarError


class PolynomialError(UnisvarError):
    pass


@dataclass(frozen=True)
class DetourVar:
    """The coordinate k[i;alpha;m]."""

    index: int
    arrow: str
    position: int

    @property
    def name(self):
        return f"k[{self.index};{self.arrow};{self.position}]"

    def sort_key(self):
        # Variables are listed detour by detour along the mast.
        return (self.position, self.arrow, self.index)

    def __repr__(self):
        return self.name


def parse_var_name(text):
    body = text.strip()
    if not (body.startswith("k[") and body.endswith("]")):
        raise PolynomialError(f"malformed variable name {text!r}")
    parts = body[2:-1].split(";")
    if len(parts) != 3:
        raise PolynomialError(f"malformed variable name {text!r}")
    try:
        index = int(parts[0])
        position = int(parts[2])
    except ValueError as exc:
        raise PolynomialError(f"malformed variable name {text!r}") from exc
    return DetourVar(index, parts[1].strip(), position)


class MultiPoly:
    """A polynomial as a map from monomials to nonzero coefficients.

    A monomial is a tuple of (DetourVar, exponent) pairs sorted by the
    variable sort key; the empty tuple is the constant monomial.
    """

    __slots__ = ("field", "monomials")

    def __init__(self, field, monomials=None):
        self.field = field
        self.monomials = {}
        if monomials:
            for mono, coeff in monomials.items():
                if not field.is_zero(coeff):
                    self.monomials[mono] = coeff

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def constant(cls, field, value):
        return cls(field, {(): value})

    @classmethod
    def variable(cls, field, var):
        return cls(field, {((var, 1),): field.one})

    def is_zero(self):
        return not self.monomials

    def is_constant(self):
        return all(mono == () for mono in self.monomials)

    def constant_value(self):
        return self.monomials.get((), self.field.zero)

    def __add__(self, other):
        field = self.field
        out = dict(self.monomials)
        for mono, coeff in other.monomials.items():
            c = field.add(out.get(mono, field.zero), coeff)
            if field.is_zero(c):
                out.pop(mono, None)
            else:
                out[mono] = c
        return MultiPoly(field, out)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, coeff):
        field = self.field
        if field.is_zero(coeff):
            return MultiPoly(field)
        return MultiPoly(
            field, {m: field.mul(coeff, c) for m, c in self.monomials.items()}
        )

    def __mul__(self, other):
        field = self.field
        out = {}
        for m1, c1 in self.monomials.items():
            for m2, c2 in other.monomials.items():
                mono = _merge_monomials(m1, m2)
                c = field.add(out.get(mono, field.zero), field.mul(c1, c2))
                if field.is_zero(c):
                    out.pop(mono, None)
                else:
                    out[mono] = c
        return MultiPoly(field, out)

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.monomials == other.monomials

    def __hash__(self):
        return hash(frozenset(self.monomials.items()))

    def variables(self):
        seen = set()
        for mono in self.monomials:
            for var, _ in mono:
                seen.add(var)
        return seen

    def evaluate(self, assignment):
        """Evaluate at a point; variables missing from the assignment are 0."""
        field = self.field
        total = field.zero
        for mono, coeff in self.monomials.items():
            value = coeff
            for var, exp in mono:
                scalar = assignment.get(var, field.zero)
                if field.is_zero(scalar):
                    value = field.zero
                    break
                for _ in range(exp):
                    value = field.mul(value, scalar)
            total = field.add(total, value)
        return total

    def sorted_monomials(self):
        return sorted(
            self.monomials.items(),
            key=lambda item: _monomial_sort_key(item[0]),
        )

    def text(self):
        if self.is_zero():
            return "0"
        parts = []
        for mono, coeff in self.sorted_monomials():
            factors = [
                var.name if exp == 1 else f"{var.name}^{exp}" for var, exp in mono
            ]
            coeff_text = self.field.format(coeff)
            if not factors:
                parts.append(coeff_text)
            elif coeff_text == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([coeff_text] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<poly {self.text()}>"


def _merge_monomials(m1, m2):
    exps = {}
    for var, exp in m1:
        exps[var] = exps.get(var, 0) + exp
    for var, exp in m2:
        exps[var] = exps.get(var, 0) + exp
    return tuple(sorted(exps.items(), key=lambda item: item[0].sort_key()))


def _monomial_sort_key(mono):
    degree = sum(exp for _, exp in mono)
    flat = tuple(
        (var.sort_key(), exp)
        for var, exp in sorted(mono, key=lambda item: item[0].sort_key())
    )
    return (degree, flat)


class PolynomialSystem:
    """A declared variable list plus defining polynomials."""

    def __init__(self, variables, polynomials):
        self.variables = tuple(variables)
        declared = set(self.variables)
        for poly in polynomials:
            undeclared = poly.variables() - declared
            if undeclared:
                raise PolynomialError(
                    f"polynomial mentions undeclared variable "
                    f"{sorted(undeclared, key=DetourVar.sort_key)[0].name}"
                )
        self.polynomials = tuple(polynomials)

    def __repr__(self):
        names = ", ".join(v.name for v in self.variables)
        return f"<system in ({names}); {len(self.polynomials)} equations>"
