"""Arithmetic for 2x2 matrices, the algebra sl(2,R) and the group SL(2,R)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

import numpy as np

from nkverify import constants, field
from nkverify.field import Number

HALF = Fraction(1, 2)

# ---
# Region: Matrices {{{
# ---


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix with vanishing determinant."""


class NotInSl2Error(ValueError):
    """Raised when a matrix that should have unit determinant does not."""


@dataclass(frozen=True)
class Mat2:
    """A 2x2 real matrix with exact or float entries."""

    m11: Number
    m12: Number
    m21: Number
    m22: Number

    @classmethod
    def identity(cls) -> Mat2:
        """Return the identity matrix."""
        return cls(field.ONE, field.ZERO, field.ZERO, field.ONE)

    @classmethod
    def zero(cls) -> Mat2:
        """Return the zero matrix."""
        return cls(field.ZERO, field.ZERO, field.ZERO, field.ZERO)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> Mat2:
        """Build a matrix from a pair of rows."""
        (first, second) = rows
        return cls(first[0], first[1], second[0], second[1])

    @classmethod
    def from_array(cls, array: np.ndarray) -> Mat2:
        """Build a float matrix from a 2x2 numpy array."""
        return cls(
            float(array[0, 0]),
            float(array[0, 1]),
            float(array[1, 0]),
            float(array[1, 1]),
        )

    def entries(self) -> Tuple[Number, Number, Number, Number]:
        """Return the entries in row-major order."""
        return (self.m11, self.m12, self.m21, self.m22)

    def to_array(self) -> np.ndarray:
        """Return a float numpy array of the entries."""
        return np.array(
            [[float(self.m11), float(self.m12)], [float(self.m21), float(self.m22)]]
        )

    def det(self) -> Number:
        """Return the determinant."""
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> Number:
        """Return the trace."""
        return self.m11 + self.m22

    def transpose(self) -> Mat2:
        """Return the transpose."""
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def inverse(self) -> Mat2:
        """Return the inverse computed through the adjugate."""
        determinant = self.det()
        if field.is_zero(determinant):
            raise SingularMatrixError(f"Matrix {self} is singular")
        return adjugate(self) * field.reciprocal(determinant)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.m11 + other.m11,
            self.m12 + other.m12,
            self.m21 + other.m21,
            self.m22 + other.m22,
        )

    def __sub__(self, other: Mat2) -> Mat2:
        return self + (-other)

    def __neg__(self) -> Mat2:
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def __mul__(self, k: Number) -> Mat2:
        return Mat2(k * self.m11, k * self.m12, k * self.m21, k * self.m22)

    __rmul__ = __mul__

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __str__(self) -> str:
        rendered = [field.render(entry) for entry in self.entries()]
        return f"[[{rendered[0]}, {rendered[1]}], [{rendered[2]}, {rendered[3]}]]"


def adjugate(m: Mat2) -> Mat2:
    """Return the adjugate, so that m @ adjugate(m) = det(m) * I."""
    return Mat2(m.m22, -m.m12, -m.m21, m.m11)


def minkowski_inner(a: Mat2, b: Mat2) -> Number:
    """Return the indefinite inner product -1/2 Trace(cof(a)^T b).

    The cofactor matrix is the transpose of the adjugate, so this equals
    -1/2 Trace(adjugate(a) b) and <a, a> = -det(a).
    """
    cofactor_a = adjugate(a).transpose()
    # Trace(m^T b) is the entrywise pairing of m with b
    pairing = sum(
        (x * y for (x, y) in zip(cofactor_a.entries(), b.entries())), field.ZERO
    )
    return pairing * Fraction(-1, 2)


# ---
# End region: Matrices }}}
# ---

# ---
# Region: Trace-free algebra {{{
# ---


@dataclass(frozen=True)
class TraceZero:
    """A trace-free matrix c1*e1 + c2*e2 + c3*e3 stored by its coefficients.

    The basis is e1 = diag(1, -1), e2 = [[0, 1], [1, 0]] and
    e3 = [[0, 1], [-1, 0]], orthonormal of signature (+, +, -).
    """

    c1: Number
    c2: Number
    c3: Number

    @classmethod
    def zero(cls) -> TraceZero:
        """Return the zero element."""
        return cls(field.ZERO, field.ZERO, field.ZERO)

    @classmethod
    def basis(cls, index: int) -> TraceZero:
        """Return the basis element e1, e2 or e3 for index 1, 2 or 3."""
        coefficients = [field.ZERO, field.ZERO, field.ZERO]
        coefficients[index - 1] = field.ONE
        return cls(*coefficients)

    @classmethod
    def project(cls, m: Mat2) -> Tuple[TraceZero, Number]:
        """Return the trace-free part of a matrix together with its trace."""
        coefficients = cls(
            (m.m11 - m.m22) * HALF,
            (m.m12 + m.m21) * HALF,
            (m.m12 - m.m21) * HALF,
        )
        return (coefficients, m.trace())

    @classmethod
    def from_mat2(cls, m: Mat2) -> TraceZero:
        """Decompose a matrix whose trace is exactly zero."""
        (coefficients, trace) = cls.project(m)
        if field.is_exact(trace) and trace != 0:
            raise ValueError(f"Matrix {m} has nonzero trace {trace}")
        return coefficients

    def to_mat2(self) -> Mat2:
        """Reconstruct the trace-free matrix."""
        return Mat2(self.c1, self.c2 + self.c3, self.c2 - self.c3, -self.c1)

    def coefficients(self) -> Tuple[Number, Number, Number]:
        """Return the coefficient triple."""
        return (self.c1, self.c2, self.c3)

    def inner(self, other: TraceZero) -> Number:
        """Return the inner product in coefficient form c1d1 + c2d2 - c3d3."""
        return self.c1 * other.c1 + self.c2 * other.c2 - self.c3 * other.c3

    def to_float(self) -> TraceZero:
        """Return a copy with float coefficients."""
        return TraceZero(float(self.c1), float(self.c2), float(self.c3))

    def __iter__(self) -> Iterator[Number]:
        return iter(self.coefficients())

    def __add__(self, other: TraceZero) -> TraceZero:
        return TraceZero(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3)

    def __sub__(self, other: TraceZero) -> TraceZero:
        return TraceZero(self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3)

    def __neg__(self) -> TraceZero:
        return TraceZero(-self.c1, -self.c2, -self.c3)

    def __mul__(self, k: Number) -> TraceZero:
        return TraceZero(k * self.c1, k * self.c2, k * self.c3)

    __rmul__ = __mul__

    def __str__(self) -> str:
        rendered = ", ".join(field.render(c) for c in self.coefficients())
        return f"({rendered})"


def cross(x: TraceZero, y: TraceZero) -> TraceZero:
    """Return the cross product 1/2 (xy - yx) of two trace-free matrices.

    On the basis e1 x e2 = e3, e1 x e3 = e2 and e2 x e3 = -e1, so the product
    is read off the coefficients without forming matrices.
    """
    return TraceZero(
        x.c3 * y.c2 - x.c2 * y.c3,
        x.c1 * y.c3 - x.c3 * y.c1,
        x.c1 * y.c2 - x.c2 * y.c1,
    )


def matrix_cross(x: TraceZero, y: TraceZero) -> TraceZero:
    """Return 1/2 (xy - yx) through matrix products."""
    xm = x.to_mat2()
    ym = y.to_mat2()
    return TraceZero.from_mat2((xm @ ym - ym @ xm) * HALF)


def commutator(x: TraceZero, y: TraceZero) -> TraceZero:
    """Return the matrix commutator xy - yx."""
    return matrix_cross(x, y) * 2


# ---
# End region: Trace-free algebra }}}
# ---

# ---
# Region: Group {{{
# ---


@dataclass(frozen=True)
class Sl2Point:
    """A matrix of unit determinant, so that <A, A> = -1."""

    matrix: Mat2

    def __post_init__(self) -> None:
        if not is_sl2(self.matrix, constants.tolerances.Membership_Guard):
            raise NotInSl2Error(f"Matrix {self.matrix} is not in SL(2,R)")

    @classmethod
    def identity(cls) -> Sl2Point:
        """Return the identity element."""
        return cls(Mat2.identity())

    def inverse(self) -> Mat2:
        """Return the inverse matrix."""
        return self.matrix.inverse()

    def membership_residual(self) -> float:
        """Return |<A, A> + 1| as a float."""
        return field.magnitude(minkowski_inner(self.matrix, self.matrix) + 1)


def is_sl2(m: Mat2, tol: float) -> bool:
    """Determine whether |<m, m> + 1| is within the tolerance."""
    if tol <= 0:
        raise ValueError("Tolerance must be positive")
    return field.magnitude(minkowski_inner(m, m) + 1) <= tol


def sl2_exp_series(x: TraceZero, terms: int = 40) -> Sl2Point:
    """Evaluate the matrix exponential through its truncated power series."""
    generator = x.to_mat2().to_array()
    total = np.eye(2)
    power = np.eye(2)
    for k in range(1, terms):
        power = power @ generator / k
        total = total + power
    return Sl2Point(Mat2.from_array(total))


def sl2_exp(x: TraceZero) -> Sl2Point:
    """Evaluate the matrix exponential of a trace-free matrix in closed form.

    A trace-free matrix satisfies x^2 = -det(x) I, so the exponential is a
    combination of I and x whose coefficients depend on the sign of det(x).
    """
    generator = x.to_float().to_mat2()
    d = float(generator.det())
    if abs(d) < constants.tolerances.Exp_Series_Threshold:
        # x^2 = -d I makes the series collapse to two terms
        return Sl2Point(
            Mat2.identity() * (1.0 - d / 2.0) + generator * (1.0 - d / 6.0)
        )
    if d > 0:
        root = math.sqrt(d)
        even, odd = math.cos(root), math.sin(root) / root
    else:
        root = math.sqrt(-d)
        even, odd = math.cosh(root), math.sinh(root) / root
    return Sl2Point(Mat2.identity() * even + generator * odd)


# ---
# End region: Group }}}
# ---
