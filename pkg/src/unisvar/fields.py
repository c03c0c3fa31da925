"""Exact coefficient fields: the rationals and prime fields GF(q).

Scalars are plain Python values (``fractions.Fraction`` for the rationals,
least nonnegative residues as ``int`` for GF(q)); the field object supplies
the arithmetic.  Nothing here ever rounds.
"""

from fractions import Fraction

from .errors import UnisvarError


class FieldError(UnisvarError):
    pass


class Field:
    """Common interface of the two coefficient fields."""

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def describe(self):
        """Header object used once per serialized document."""
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers; values are reduced Fractions."""

    name = "Q"
    modulus = None

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        """Parse 'a' or 'a/b' into a reduced Fraction."""
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"malformed coefficient {text!r}") from exc

    def format(self, a):
        return str(a)

    def describe(self):
        return {"kind": "Q"}


class PrimeField(Field):
    """GF(q) for a prime q; values are least nonnegative residues."""

    name = "GF"

    def __init__(self, q):
        if q < 2 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
            raise FieldError(f"modulus {q} is not prime")
        self.modulus = q
        self.zero = 0
        self.one = 1 % q

    def __repr__(self):
        return f"GF({self.modulus})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def inv(self, a):
        a %= self.modulus
        if a == 0:
            raise FieldError("division by zero")
        return pow(a, self.modulus - 2, self.modulus)

    def from_int(self, n):
        return n % self.modulus

    def elements(self):
        return range(self.modulus)

    def parse(self, text):
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"malformed coefficient {text!r}") from exc
        num = frac.numerator % self.modulus
        den = frac.denominator % self.modulus
        return self.mul(num, self.inv(den))

    def format(self, a):
        return str(a % self.modulus)

    def describe(self):
        return {"kind": "GF", "q": self.modulus}


QQ = RationalField()


def field_from_description(desc):
    if desc.get("kind") == "Q":
        return QQ
    if desc.get("kind") == "GF":
        return PrimeField(int(desc["q"]))
    raise FieldError(f"unknown field description {desc!r}")
