"""Exact arithmetic in the quadratic field Q(sqrt(3)) with a float fallback."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from nkverify import enumerations

# a rational coefficient accepted by the exact field
Rational = Union[int, Fraction]

# any value that the geometry kernel may store in a matrix entry
Number = Union["Scalar", int, Fraction, float]

SQRT3_FLOAT = math.sqrt(3.0)


def _as_fraction(value: Rational) -> Fraction:
    """Convert an exact rational input to a Fraction, rejecting floats."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not field elements")
    if type(value) is Fraction:
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(
        f"Exact coefficient must be int or Fraction, not {type(value).__name__}"
    )


@total_ordering
@dataclass(frozen=True, eq=False, repr=False)
class Scalar:
    """An element a + b*sqrt(3) of Q(sqrt(3)) with rational a and b.

    Arithmetic between two exact values stays exact. Mixing an exact value
    with a Python float falls back to float arithmetic, which is how the
    numeric surface pipeline reuses the same matrix and tangent types.
    """

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @classmethod
    def from_float(cls, value: float) -> Scalar:
        """Lift a float to the exact rational it represents."""
        return cls(Fraction(value))

    @property
    def is_rational(self) -> bool:
        """Determine whether the sqrt(3) component vanishes."""
        return self.b == 0

    def conjugate(self) -> Scalar:
        """Return the Galois conjugate a - b*sqrt(3)."""
        return Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Return the field norm (a + b*sqrt(3))(a - b*sqrt(3))."""
        return self.a * self.a - 3 * self.b * self.b

    def sign(self) -> int:
        """Return the exact sign of the real number a + b*sqrt(3)."""
        if self.a >= 0 and self.b >= 0:
            return 0 if (self.a == 0 and self.b == 0) else 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # the components have opposite signs, so compare a^2 with 3b^2
        rational_dominates = self.a * self.a > 3 * self.b * self.b
        if self.a > 0:
            return 1 if rational_dominates else -1
        return -1 if rational_dominates else 1

    def inverse(self) -> Scalar:
        """Return the multiplicative inverse."""
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self.a / norm, -self.b / norm)

    def to(self, mode: enumerations.Arithmetic) -> Number:
        """Return this value in the requested arithmetic mode."""
        if mode == enumerations.Arithmetic.FLOAT:
            return float(self)
        return self

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT3_FLOAT

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __add__(self, other: object) -> Number:
        if isinstance(other, float):
            return float(self) + other
        if isinstance(other, Scalar):
            return Scalar(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Scalar(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: object) -> Number:
        if isinstance(other, (Scalar, int, Fraction, float)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> Number:
        if isinstance(other, (int, Fraction, float)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other: object) -> Number:
        if isinstance(other, float):
            return float(self) * other
        if isinstance(other, Scalar):
            if not (self.b or other.b):
                return Scalar(self.a * other.a)
            return Scalar(
                self.a * other.a + 3 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Scalar(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Number:
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, Scalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other: object) -> Number:
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int) -> Scalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar(1)
        for _ in range(exponent):
            result = result * self  # type: ignore[assignment]
        return result

    def __abs__(self) -> Scalar:
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.a == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, float):
            return float(self) < other
        if isinstance(other, (Scalar, int, Fraction)):
            return (self - other).sign() < 0  # type: ignore[union-attr]
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"Scalar({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        if self.b == 1:
            irrational = "√3"
        elif self.b == -1:
            irrational = "-√3"
        else:
            irrational = f"{self.b}√3"
        if self.a == 0:
            return irrational
        if irrational.startswith("-"):
            return f"{self.a} - {irrational[1:]}"
        return f"{self.a} + {irrational}"


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT3 = Scalar(0, 1)
INV_SQRT3 = Scalar(0, Fraction(1, 3))


def value(
    a: Rational,
    b: Rational = 0,
    mode: enumerations.Arithmetic = enumerations.Arithmetic.EXACT,
) -> Number:
    """Build a + b*sqrt(3) in the requested arithmetic mode."""
    return Scalar(a, b).to(mode)


def is_exact(x: object) -> bool:
    """Determine whether a value belongs to the exact arithmetic path."""
    return isinstance(x, (Scalar, int, Fraction)) and not isinstance(x, bool)


def to_float(x: Number) -> float:
    """Convert any supported number to a float."""
    return float(x)


def reciprocal(x: Number) -> Number:
    """Return 1/x without leaving the arithmetic mode of x."""
    if isinstance(x, Scalar):
        return x.inverse()
    if isinstance(x, float):
        return 1.0 / x
    return Fraction(1) / x


def magnitude(x: Number) -> float:
    """Return the absolute value of a number as a float residual."""
    return abs(float(x))


def is_zero(x: Number, tolerance: float = 0.0) -> bool:
    """Determine whether a value vanishes, exactly or within the tolerance."""
    if is_exact(x):
        return x == 0
    return abs(float(x)) <= tolerance


def render(x: Number) -> str:
    """Render a number for a report witness."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)
