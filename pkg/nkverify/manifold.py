"""The nearly Kähler structure on SL(2,R) x SL(2,R) in closed form."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from nkverify import constants, field, sl2
from nkverify.field import Number
from nkverify.sl2 import Mat2, Sl2Point, TraceZero, cross

logger = logging.getLogger(__name__)

TWO_THIRDS = Fraction(2, 3)
ONE_THIRD = Fraction(1, 3)

# the coefficient 2/(3 sqrt(3)) = (2/9) sqrt(3) of the tensor G
G_COEFFICIENT = field.Scalar(0, Fraction(2, 9))


class BasePointMismatchError(ValueError):
    """Raised when tangent vectors at different points are combined."""


class FrameIndex(str, Enum):
    """Name the left-invariant frame fields E1, E2, E3, F1, F2, F3."""

    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"

    @property
    def position(self) -> int:
        """Return the slot of the field in a six-coefficient vector."""
        return list(FrameIndex).index(self)

    @property
    def factor(self) -> str:
        """Return E for the first factor and F for the second."""
        return self.value[0]

    @property
    def basis(self) -> int:
        """Return the index of the underlying trace-free basis matrix."""
        return int(self.value[1])


FRAME: Tuple[FrameIndex, ...] = tuple(FrameIndex)


# ---
# Region: Points and vectors {{{
# ---


@dataclass(frozen=True)
class NKPoint:
    """A point (A, B) of SL(2,R) x SL(2,R)."""

    A: Sl2Point
    B: Sl2Point

    @classmethod
    def identity(cls) -> NKPoint:
        """Return the identity (I, I)."""
        return cls(Sl2Point.identity(), Sl2Point.identity())

    def position(self) -> Tuple[Mat2, Mat2]:
        """Return the position vector F = (A, B) as raw matrices."""
        return (self.A.matrix, self.B.matrix)


@dataclass(frozen=True)
class Tangent:
    """The tangent vector (A alpha, B beta) at the point (A, B)."""

    base: NKPoint
    alpha: TraceZero
    beta: TraceZero

    @classmethod
    def zero(cls, base: NKPoint) -> Tangent:
        """Return the zero vector at a point."""
        return cls(base, TraceZero.zero(), TraceZero.zero())

    def raw(self) -> Tuple[Mat2, Mat2]:
        """Return the matrix pair (A alpha, B beta)."""
        return (
            self.base.A.matrix @ self.alpha.to_mat2(),
            self.base.B.matrix @ self.beta.to_mat2(),
        )

    def coefficients(self) -> FrameCoeffs:
        """Return the coefficients in the frame E1, E2, E3, F1, F2, F3."""
        return FrameCoeffs((*self.alpha.coefficients(), *self.beta.coefficients()))

    def to_float(self) -> Tangent:
        """Return a copy with float coefficients."""
        return Tangent(self.base, self.alpha.to_float(), self.beta.to_float())

    def __add__(self, other: Tangent) -> Tangent:
        base = common_base(self, other)
        return Tangent(base, self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: Tangent) -> Tangent:
        base = common_base(self, other)
        return Tangent(base, self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> Tangent:
        return Tangent(self.base, -self.alpha, -self.beta)

    def __mul__(self, k: Number) -> Tangent:
        return Tangent(self.base, self.alpha * k, self.beta * k)

    __rmul__ = __mul__


@dataclass(frozen=True)
class FrameCoeffs:
    """Six coefficients in the basis E1, E2, E3, F1, F2, F3."""

    values: Tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(FRAME):
            raise ValueError(f"Expected six coefficients, found {len(self.values)}")

    @classmethod
    def zero(cls) -> FrameCoeffs:
        """Return the zero vector."""
        return cls((field.ZERO,) * len(FRAME))

    @classmethod
    def unit(cls, index: FrameIndex) -> FrameCoeffs:
        """Return the coefficients of a single frame field."""
        return cls.from_mapping({index: field.ONE})

    @classmethod
    def from_mapping(cls, terms: Mapping[FrameIndex, Number]) -> FrameCoeffs:
        """Build coefficients from a sparse mapping of frame fields."""
        values = [field.ZERO] * len(FRAME)
        for index, coefficient in terms.items():
            values[index.position] = values[index.position] + coefficient
        return cls(tuple(values))

    @classmethod
    def from_tangent(cls, vector: Tangent) -> FrameCoeffs:
        """Read the coefficients of a tangent vector."""
        return vector.coefficients()

    def to_tangent(self, base: Optional[NKPoint] = None) -> Tangent:
        """Assemble the tangent vector with these coefficients."""
        base = base if base is not None else NKPoint.identity()
        return Tangent(
            base, TraceZero(*self.values[:3]), TraceZero(*self.values[3:])
        )

    def __getitem__(self, index: FrameIndex) -> Number:
        return self.values[index.position]

    def __iter__(self) -> Iterator[Number]:
        return iter(self.values)

    def __add__(self, other: FrameCoeffs) -> FrameCoeffs:
        return FrameCoeffs(tuple(x + y for (x, y) in zip(self.values, other.values)))

    def __sub__(self, other: FrameCoeffs) -> FrameCoeffs:
        return FrameCoeffs(tuple(x - y for (x, y) in zip(self.values, other.values)))

    def __neg__(self) -> FrameCoeffs:
        return FrameCoeffs(tuple(-x for x in self.values))

    def __mul__(self, k: Number) -> FrameCoeffs:
        return FrameCoeffs(tuple(k * x for x in self.values))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrameCoeffs):
            return NotImplemented
        return all(x == y for (x, y) in zip(self.values, other.values))

    def __hash__(self) -> int:
        return hash(self.values)

    def is_zero(self, tolerance: float = 0.0) -> bool:
        """Determine whether every coefficient vanishes."""
        return all(field.is_zero(x, tolerance) for x in self.values)

    def max_abs(self) -> float:
        """Return the largest coefficient magnitude."""
        return max(field.magnitude(x) for x in self.values)

    def __str__(self) -> str:
        terms = [
            f"({field.render(x)}){index.value}"
            for (index, x) in zip(FRAME, self.values)
            if not field.is_zero(x)
        ]
        return " + ".join(terms) if terms else "0"


def common_base(*vectors: Tangent) -> NKPoint:
    """Return the shared base point of the vectors or raise an error."""
    base = vectors[0].base
    for vector in vectors[1:]:
        if vector.base is not base and vector.base != base:
            raise BasePointMismatchError(
                "Tangent vectors live at different base points"
            )
    return base


def frame_norm(vector: Tangent) -> float:
    """Return the largest frame coefficient magnitude of a tangent vector."""
    return vector.coefficients().max_abs()


# ---
# End region: Points and vectors }}}
# ---

# ---
# Region: Metrics and structures {{{
# ---


def product_metric(X: Tangent, Y: Tangent) -> Number:
    """Return the usual product metric <X, Y> = <U, U'> + <V, V'>.

    The pairing is invariant under left multiplication by SL(2,R), so
    <A alpha, A gamma> = <alpha, gamma> and the matrices A alpha are never
    formed.
    """
    common_base(X, Y)
    return X.alpha.inner(Y.alpha) + X.beta.inner(Y.beta)


def nk_metric(X: Tangent, Y: Tangent) -> Number:
    """Return the nearly Kähler metric g(X, Y) = 2/3 <X, Y> - 1/3 <PX, Y>."""
    common_base(X, Y)
    product = X.alpha.inner(Y.alpha) + X.beta.inner(Y.beta)
    swapped = X.beta.inner(Y.alpha) + X.alpha.inner(Y.beta)
    return TWO_THIRDS * product - ONE_THIRD * swapped


def apply_J(X: Tangent) -> Tangent:
    """Apply the almost complex structure J(a, b) = (a - 2b, 2a - b)/sqrt(3)."""
    return Tangent(
        X.base,
        (X.alpha - X.beta * 2) * field.INV_SQRT3,
        (X.alpha * 2 - X.beta) * field.INV_SQRT3,
    )


def apply_P(X: Tangent) -> Tangent:
    """Apply the almost product structure that swaps the two factors."""
    return Tangent(X.base, X.beta, X.alpha)


def apply_Q(X: Tangent) -> Tangent:
    """Apply the usual product structure (a, b) -> (-a, b)."""
    return Tangent(X.base, -X.alpha, X.beta)


def p_from_q(X: Tangent) -> Tangent:
    """Express P through Q and J as PZ = -(Z + sqrt(3) JQZ)/2."""
    return (X + apply_J(apply_Q(X)) * field.SQRT3) * Fraction(-1, 2)


def tensor_G(X: Tangent, Y: Tangent) -> Tangent:
    """Return G(X, Y) = (nabla_X J)Y through the cross product formula."""
    base = common_base(X, Y)
    (a, b) = (X.alpha, X.beta)
    (c, d) = (Y.alpha, Y.beta)
    first = -cross(a, c) - cross(a, d) + cross(c, b) + cross(b, d) * 2
    second = -cross(a, c) * 2 + cross(a, d) - cross(c, b) + cross(b, d)
    return Tangent(base, first * G_COEFFICIENT, second * G_COEFFICIENT)


# ---
# End region: Metrics and structures }}}
# ---

# ---
# Region: Connection and curvature {{{
# ---


def frame_field(i: FrameIndex, p: NKPoint) -> Tangent:
    """Return the value of a left-invariant frame field at a point."""
    return FrameCoeffs.unit(i).to_tangent(p)


def invariant_connection(X: Tangent, Y: Tangent) -> Tangent:
    """Return nabla_X Y for the left-invariant extensions of X and Y."""
    base = common_base(X, Y)
    (a, b) = (X.alpha, X.beta)
    (c, d) = (Y.alpha, Y.beta)
    mixed = cross(a, d) * ONE_THIRD - cross(b, c) * ONE_THIRD
    return Tangent(base, cross(a, c) - mixed, cross(b, d) + mixed)


def invariant_bracket(X: Tangent, Y: Tangent) -> Tangent:
    """Return the Lie bracket of the left-invariant extensions."""
    base = common_base(X, Y)
    return Tangent(
        base, sl2.commutator(X.alpha, Y.alpha), sl2.commutator(X.beta, Y.beta)
    )


def invariant_curvature(U: Tangent, V: Tangent, W: Tangent) -> Tangent:
    """Return R(U, V)W computed from the connection of invariant extensions."""
    common_base(U, V, W)
    nabla = invariant_connection
    return (
        nabla(U, nabla(V, W))
        - nabla(V, nabla(U, W))
        - nabla(invariant_bracket(U, V), W)
    )


def curvature(U: Tangent, V: Tangent, W: Tangent) -> Tangent:
    """Return the Riemann curvature R(U, V)W of the nearly Kähler metric."""
    common_base(U, V, W)
    g = nk_metric
    J = apply_J
    P = apply_P
    (JU, JV, PU, PV) = (J(U), J(V), P(U), P(V))
    (JPU, JPV) = (J(PU), J(PV))
    first = U * g(V, W) - V * g(U, W)
    second = JU * g(JV, W) - JV * g(JU, W) - J(W) * (2 * g(JU, V))
    third = (
        PU * g(PV, W) - PV * g(PU, W) + JPU * g(JPV, W) - JPV * g(JPU, W)
    )
    return (
        first * Fraction(-5, 6)
        + second * Fraction(-1, 6)
        + third * Fraction(-2, 3)
    )


def nabla_G(X: Tangent, Y: Tangent, Z: Tangent) -> Tangent:
    """Return the covariant derivative (nabla_X G)(Y, Z) in closed form."""
    common_base(X, Y, Z)
    g = nk_metric
    JY = apply_J(Y)
    combination = JY * g(X, Z) - apply_J(Z) * g(X, Y) - X * g(JY, Z)
    return combination * (-TWO_THIRDS)


def g_GG(X: Tangent, Y: Tangent, Z: Tangent, W: Tangent) -> Number:
    """Return g(G(X, Y), G(Z, W)) in closed form."""
    common_base(X, Y, Z, W)
    g = nk_metric
    (JX, JZ, JW) = (apply_J(X), apply_J(Z), apply_J(W))
    combination = (
        g(X, Z) * g(Y, W)
        - g(X, W) * g(Y, Z)
        + g(JX, Z) * g(JW, Y)
        - g(JX, W) * g(JZ, Y)
    )
    return -TWO_THIRDS * combination


def G_of_G(X: Tangent, Z: Tangent, W: Tangent) -> Tangent:
    """Return G(X, G(Z, W)) in closed form."""
    common_base(X, Z, W)
    g = nk_metric
    JX = apply_J(X)
    combination = (
        W * g(X, Z) - Z * g(X, W) + apply_J(W) * g(JX, Z) - apply_J(Z) * g(JX, W)
    )
    return combination * TWO_THIRDS


def connection_shift(X: Tangent, Y: Tangent) -> Tangent:
    """Return the difference JG(X, PY)/2 + JG(Y, PX)/2 of the two connections."""
    common_base(X, Y)
    shift = apply_J(tensor_G(X, apply_P(Y))) + apply_J(tensor_G(Y, apply_P(X)))
    return shift * Fraction(1, 2)


def ambient_to_nk(
    D_XY: Tuple[Mat2, Mat2], X: Tangent, Y: Tangent, p: NKPoint
) -> Tangent:
    """Recover the nearly Kähler derivative from a flat ambient derivative.

    The flat derivative of the product of matrix spaces splits as the
    product Levi-Civita derivative plus (<X, Y> F + <X, QY> QF)/2, where F
    is the position vector and QF = (-A, B).
    """
    common_base(X, Y)
    (A, B) = p.position()
    inner = product_metric(X, Y)
    inner_q = product_metric(X, apply_Q(Y))
    # normal components along F and QF
    first_normal = A * ((inner - inner_q) * Fraction(1, 2))
    second_normal = B * ((inner + inner_q) * Fraction(1, 2))
    (alpha, alpha_trace) = TraceZero.project(A.inverse() @ (D_XY[0] - first_normal))
    (beta, beta_trace) = TraceZero.project(B.inverse() @ (D_XY[1] - second_normal))
    logger.debug(
        f"Ambient derivative trace defects {field.render(alpha_trace)}, {field.render(beta_trace)}"
    )
    product_derivative = Tangent(p, alpha, beta)
    return product_derivative - connection_shift(X, Y)


# ---
# End region: Connection and curvature }}}
# ---

# ---
# Region: Identity residuals {{{
# ---


def q_metric_residual(X: Tangent, Y: Tangent) -> Number:
    """Return g(QX, QY) + g(X, Y) - 4/3 <X, Y>."""
    return (
        nk_metric(apply_Q(X), apply_Q(Y))
        + nk_metric(X, Y)
        - Fraction(4, 3) * product_metric(X, Y)
    )


def product_from_q_residual(X: Tangent, Y: Tangent) -> Number:
    """Return <X, QY> + sqrt(3) g(X, PJY)."""
    return product_metric(X, apply_Q(Y)) + field.SQRT3 * nk_metric(
        X, apply_P(apply_J(Y))
    )


def product_from_g_residual(X: Tangent, Y: Tangent) -> Number:
    """Return <X, Y> - 2g(X, Y) - g(X, PY)."""
    return product_metric(X, Y) - 2 * nk_metric(X, Y) - nk_metric(X, apply_P(Y))


def g_from_product_residual(X: Tangent, Y: Tangent) -> Number:
    """Return g(X, Y) - (<X, Y> + <JX, JY>)/4."""
    return nk_metric(X, Y) - Fraction(1, 4) * (
        product_metric(X, Y) + product_metric(apply_J(X), apply_J(Y))
    )


def q_from_p_residual(X: Tangent) -> Tangent:
    """Return QZ + (2PJZ - JZ)/sqrt(3)."""
    JX = apply_J(X)
    return apply_Q(X) + (apply_P(JX) * 2 - JX) * field.INV_SQRT3


# ---
# End region: Identity residuals }}}
# ---

# ---
# Region: Sampling {{{
# ---


def random_trace_zero(
    rng: np.random.Generator, bound: float = 1.0
) -> TraceZero:
    """Draw a trace-free matrix with coefficients uniform in [-bound, bound]."""
    (c1, c2, c3) = rng.uniform(-bound, bound, 3)
    return TraceZero(float(c1), float(c2), float(c3))


def random_point(rng: np.random.Generator) -> NKPoint:
    """Draw a point as the exponential of two random trace-free matrices."""
    return NKPoint(
        sl2.sl2_exp(random_trace_zero(rng)), sl2.sl2_exp(random_trace_zero(rng))
    )


def random_tangent(rng: np.random.Generator, base: NKPoint) -> Tangent:
    """Draw a tangent vector with frame coefficients uniform in [-1, 1]."""
    return Tangent(base, random_trace_zero(rng), random_trace_zero(rng))


def random_unit_tangent(rng: np.random.Generator, base: NKPoint) -> Tangent:
    """Draw a tangent vector scaled to |g(v, v)| = 1, avoiding the null cone."""
    while True:
        candidate = random_tangent(rng, base)
        length = float(nk_metric(candidate, candidate))
        if abs(length) >= constants.tolerances.Unit_Sample_Floor:
            return candidate * (1.0 / math.sqrt(abs(length)))


def random_tangents(
    rng: np.random.Generator, count: int, base: Optional[NKPoint] = None
) -> Sequence[Tangent]:
    """Draw several tangent vectors at a common random point."""
    point = base if base is not None else random_point(rng)
    return [random_tangent(rng, point) for _ in range(count)]


def frame_at(p: NKPoint) -> Dict[FrameIndex, Tangent]:
    """Return all six frame fields at a point."""
    return {index: frame_field(index, p) for index in FRAME}


# ---
# End region: Sampling }}}
# ---
