"""Exact coefficient fields: the rationals and prime fields GF(p).

Rational elements are ``fractions.Fraction`` (plain ints are accepted and
coerced); prime-field elements are ints in ``range(p)``.  Everything downstream
does exact zero tests, so no other scalar types are allowed in.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class ModularInt(int):
    """An element of GF(p) that stays reduced under ordinary arithmetic.

    Subclassing int keeps zero-tests, equality, and hashing exact while
    letting the rest of the code use plain ``+``/``*`` on coefficients.
    """

    def __new__(cls, value, p):
        self = super().__new__(cls, value % p)
        self.p = p
        return self

    def __add__(self, other):
        return ModularInt(int(self) + int(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModularInt(int(self) - int(other), self.p)

    def __rsub__(self, other):
        return ModularInt(int(other) - int(self), self.p)

    def __mul__(self, other):
        return ModularInt(int(self) * int(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModularInt(-int(self), self.p)

    def __truediv__(self, other):
        return ModularInt(int(self) * pow(int(other), -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModularInt(int(other) * pow(int(self), -1, self.p), self.p)

    def __pow__(self, exponent):
        return ModularInt(pow(int(self), exponent, self.p), self.p)


class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValueError(f"field order must be 0 (rationals) or prime, got {p}")
        self.p = p

    @property
    def is_rationals(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        """Coerce an int, Fraction, or ``a/b`` string into the field."""
        if isinstance(x, str):
            num, _, den = x.partition("/")
            x = Fraction(int(num), int(den)) if den else int(num)
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return ModularInt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModularInt(x, self.p)

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else ModularInt(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else ModularInt(1, self.p)

    def add(self, a, b):
        return a + b if self.p == 0 else ModularInt(int(a) + int(b), self.p)

    def sub(self, a, b):
        return a - b if self.p == 0 else ModularInt(int(a) - int(b), self.p)

    def mul(self, a, b):
        return a * b if self.p == 0 else ModularInt(int(a) * int(b), self.p)

    def neg(self, a):
        return -a if self.p == 0 else ModularInt(-int(a), self.p)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else ModularInt(pow(int(a), -1, self.p), self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def field_from_spec(spec) -> Field:
    """Build a field from the document form ``"QQ"`` or ``{"Fp": p}``."""
    if spec == "QQ":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return Field(int(spec["Fp"]))
    raise ValueError(f"unrecognized field spec: {spec!r}")
