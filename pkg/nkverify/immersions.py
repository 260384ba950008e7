"""Closed-form almost complex surfaces and the registry of named immersions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Dict, List, Optional, Tuple

from nkverify import constants, enumerations, sl2
from nkverify.manifold import NKPoint
from nkverify.sl2 import Mat2, Sl2Point, TraceZero

SQRT3 = math.sqrt(3.0)
SQRT2 = math.sqrt(2.0)


class DomainError(ValueError):
    """Raised when an immersion is evaluated outside of its domain."""


class SingularPointError(ValueError):
    """Raised when a surface jet meets a singular matrix."""


@dataclass(frozen=True)
class LogDerivatives:
    """The trace-free matrices A^-1 A_s, A^-1 A_t, B^-1 B_s and B^-1 B_t."""

    a_s: TraceZero
    a_t: TraceZero
    b_s: TraceZero
    b_t: TraceZero


@dataclass(frozen=True)
class Expectation:
    """The geometry that a classified example is known to have."""

    gauss_curvature: float
    tangency: enumerations.PTangency
    signature: enumerations.MetricSignature
    totally_geodesic: bool = True
    grid_radius: float = constants.defaults.Flat_Grid_Radius


@dataclass(frozen=True)
class Immersion:
    """A map (s, t) -> (A(s, t), B(s, t)) with optional analytic derivatives."""

    name: str
    evaluator: Callable[[float, float], NKPoint]
    domain: Callable[[float, float], bool]
    log_derivatives: Optional[Callable[[float, float], LogDerivatives]] = None
    expected: Optional[Expectation] = None
    description: str = ""
    flat_sign: int = 0
    tags: Tuple[str, ...] = dataclass_field(default_factory=tuple)

    def contains(self, s: float, t: float) -> bool:
        """Determine whether (s, t) lies in the domain."""
        return self.domain(s, t)

    def __call__(self, s: float, t: float) -> NKPoint:
        if not self.domain(s, t):
            raise DomainError(f"Point ({s}, {t}) is outside the domain of {self.name}")
        return self.evaluator(s, t)

    def logs(self, s: float, t: float) -> LogDerivatives:
        """Return the analytic log derivatives at a point."""
        if self.log_derivatives is None:
            raise ValueError(f"Immersion {self.name} has no analytic derivatives")
        if not self.domain(s, t):
            raise DomainError(f"Point ({s}, {t}) is outside the domain of {self.name}")
        return self.log_derivatives(s, t)


def _everywhere(s: float, t: float) -> bool:
    return True


def _point(A: Mat2, B: Mat2) -> NKPoint:
    return NKPoint(Sl2Point(A), Sl2Point(B))


# ---
# Region: Flat examples {{{
# ---


def _flat_exponents(s: float, t: float) -> Tuple[float, float]:
    return ((SQRT3 * s - t) / SQRT2, (SQRT3 * s + t) / SQRT2)


def _flat_logs(generator: TraceZero) -> Callable[[float, float], LogDerivatives]:
    # the exponents have s-derivative sqrt(3/2) and t-derivatives -+ 1/sqrt(2)
    def logs(s: float, t: float) -> LogDerivatives:
        return LogDerivatives(
            a_s=generator * math.sqrt(1.5),
            a_t=generator * (-1.0 / SQRT2),
            b_s=generator * math.sqrt(1.5),
            b_t=generator * (1.0 / SQRT2),
        )

    return logs


def example_flat_positive() -> Immersion:
    """Return the flat surface with positive definite induced metric."""

    def evaluate(s: float, t: float) -> NKPoint:
        (u, w) = _flat_exponents(s, t)
        return _point(
            Mat2(math.exp(u), 0.0, 0.0, math.exp(-u)),
            Mat2(math.exp(w), 0.0, 0.0, math.exp(-w)),
        )

    return Immersion(
        name="flat-positive",
        evaluator=evaluate,
        domain=_everywhere,
        log_derivatives=_flat_logs(TraceZero.basis(1).to_float()),
        expected=Expectation(
            gauss_curvature=0.0,
            tangency=enumerations.PTangency.P_TANGENT,
            signature=enumerations.MetricSignature.POSITIVE_DEFINITE,
        ),
        description="diagonal hyperbolic one-parameter subgroups, K = 0",
        flat_sign=1,
    )


def example_flat_negative() -> Immersion:
    """Return the flat surface with negative definite induced metric."""

    def rotation(angle: float) -> Mat2:
        (c, s) = (math.cos(angle), math.sin(angle))
        return Mat2.from_rows([[c, s], [-s, c]])

    def evaluate(s: float, t: float) -> NKPoint:
        (u, w) = _flat_exponents(s, t)
        return _point(rotation(u), rotation(w))

    return Immersion(
        name="flat-negative",
        evaluator=evaluate,
        domain=_everywhere,
        log_derivatives=_flat_logs(TraceZero.basis(3).to_float()),
        expected=Expectation(
            gauss_curvature=0.0,
            tangency=enumerations.PTangency.P_TANGENT,
            signature=enumerations.MetricSignature.NEGATIVE_DEFINITE,
        ),
        description="rotation one-parameter subgroups, K = 0",
        flat_sign=-1,
    )


# ---
# End region: Flat examples }}}
# ---

# ---
# Region: Hyperbolic example {{{
# ---


def _disk_denominator(s: float, t: float) -> float:
    return s * s + t * t - 1.0


def hyperbolic_domain(s: float, t: float) -> bool:
    """Exclude a thin annulus around the unit circle where the chart blows up."""
    return abs(_disk_denominator(s, t)) >= constants.defaults.Hyperbolic_Annulus


def epsilon(s: float, t: float) -> TraceZero:
    """Return the isothermal parametrization of the hyperboloid <e, e> = -3/4."""
    d = _disk_denominator(s, t)
    return TraceZero(
        -SQRT3 * s / d,
        -SQRT3 * t / d,
        0.5 * SQRT3 * (s * s + t * t + 1.0) / d,
    )


def epsilon_derivatives(s: float, t: float) -> Tuple[TraceZero, TraceZero]:
    """Return the closed-form partial derivatives of the hyperboloid chart."""
    d = _disk_denominator(s, t)
    d2 = d * d
    along_s = Mat2(
        SQRT3 * (s * s - t * t + 1.0) / d2,
        2.0 * SQRT3 * s * (t - 1.0) / d2,
        2.0 * SQRT3 * s * (t + 1.0) / d2,
        SQRT3 * (-s * s + t * t - 1.0) / d2,
    )
    along_t = Mat2(
        2.0 * SQRT3 * s * t / d2,
        SQRT3 * ((t - 1.0) ** 2 - s * s) / d2,
        SQRT3 * ((t + 1.0) ** 2 - s * s) / d2,
        -2.0 * SQRT3 * s * t / d2,
    )
    return (TraceZero.project(along_s)[0], TraceZero.project(along_t)[0])


def disk_to_quadric(s: float, t: float) -> Tuple[float, float, float]:
    """Map the disk chart to the hyperbolic quadric y1^2 + y2^2 - y3^2 = -1."""
    d = _disk_denominator(s, t)
    return (-2.0 * s / d, -2.0 * t / d, (s * s + t * t + 1.0) / d)


def quadric_point(y: Tuple[float, float, float]) -> NKPoint:
    """Return the point of the P-normal surface over a point of the quadric."""
    (y1, y2, y3) = y
    residual = y1 * y1 + y2 * y2 - y3 * y3 + 1.0
    if abs(residual) > constants.tolerances.Membership_Guard * max(1.0, y3 * y3):
        raise DomainError(f"Point {y} is not on the hyperbolic quadric")
    half_root = 0.5 * SQRT3
    A = Mat2(
        half_root * y1 + 0.5,
        half_root * (y2 + y3),
        half_root * (y2 - y3),
        0.5 - half_root * y1,
    )
    B = Mat2(
        0.5 - half_root * y1,
        -half_root * (y2 + y3),
        -half_root * (y2 - y3),
        half_root * y1 + 0.5,
    )
    return _point(A, B)


def _hyperbolic_st(s: float, t: float) -> NKPoint:
    d = _disk_denominator(s, t)
    A = Mat2(
        0.5 - SQRT3 * s / d,
        SQRT3 * (s * s + (t - 1.0) ** 2) / (2.0 * d),
        -SQRT3 * (s * s + (t + 1.0) ** 2) / (2.0 * d),
        SQRT3 * s / d + 0.5,
    )
    B = Mat2(
        SQRT3 * s / d + 0.5,
        -SQRT3 * (s * s + (t - 1.0) ** 2) / (2.0 * d),
        SQRT3 * (s * s + (t + 1.0) ** 2) / (2.0 * d),
        0.5 - SQRT3 * s / d,
    )
    return _point(A, B)


def _hyperbolic_logs(s: float, t: float) -> LogDerivatives:
    # A = I/2 + e and B = I/2 - e = A^-1 with <e, e_s> = 0 on the hyperboloid
    position = epsilon(s, t)
    (along_s, along_t) = epsilon_derivatives(s, t)
    return LogDerivatives(
        a_s=along_s * 0.5 - sl2.cross(position, along_s),
        a_t=along_t * 0.5 - sl2.cross(position, along_t),
        b_s=along_s * (-0.5) - sl2.cross(position, along_s),
        b_t=along_t * (-0.5) - sl2.cross(position, along_t),
    )


def printed_hyperbolic_logs(s: float, t: float) -> LogDerivatives:
    """Return the log derivatives of the P-normal surface as printed matrices."""
    d2 = 2.0 * _disk_denominator(s, t) ** 2
    r = SQRT3

    def tracefree(m11: float, m12: float, m21: float) -> TraceZero:
        return TraceZero.project(Mat2(m11 / d2, m12 / d2, m21 / d2, -m11 / d2))[0]

    return LogDerivatives(
        a_s=tracefree(
            r * s * s - 6 * s * t - r * (t * t - 1),
            3 * s * s + 2 * r * s * (t - 1) - 3 * (t - 1) ** 2,
            3 * s * s + 2 * r * s * (t + 1) - 3 * (t + 1) ** 2,
        ),
        a_t=tracefree(
            3 * s * s + 2 * r * s * t - 3 * t * t + 3,
            -r * s * s + 6 * s * (t - 1) + r * (t - 1) ** 2,
            -r * s * s + 6 * s * (t + 1) + r * (t + 1) ** 2,
        ),
        b_s=tracefree(
            -r * s * s - 6 * s * t + r * (t * t - 1),
            3 * s * s - 2 * r * s * (t - 1) - 3 * (t - 1) ** 2,
            3 * s * s - 2 * r * s * (t + 1) - 3 * (t + 1) ** 2,
        ),
        b_t=tracefree(
            3 * s * s - 2 * r * s * t - 3 * t * t + 3,
            r * s * s + 6 * s * (t - 1) - r * (t - 1) ** 2,
            r * s * s + 6 * s * (t + 1) - r * (t + 1) ** 2,
        ),
    )


def _hyperbolic_expectation() -> Expectation:
    return Expectation(
        gauss_curvature=-4.0 / 3.0,
        tangency=enumerations.PTangency.P_NORMAL,
        signature=enumerations.MetricSignature.POSITIVE_DEFINITE,
        grid_radius=constants.defaults.Hyperbolic_Grid_Radius,
    )


def example_hyperbolic() -> Immersion:
    """Return the totally geodesic P-normal surface in the disk chart."""
    return Immersion(
        name="hyperbolic-st",
        evaluator=_hyperbolic_st,
        domain=hyperbolic_domain,
        log_derivatives=_hyperbolic_logs,
        expected=_hyperbolic_expectation(),
        description="P-normal totally geodesic surface, K = -4/3",
        tags=("epsilon",),
    )


def example_hyperbolic_quadric() -> Immersion:
    """Return the P-normal surface through the hyperbolic quadric chart.

    No analytic derivatives are attached so that every jet of this entry is
    computed by finite differences.
    """

    def evaluate(s: float, t: float) -> NKPoint:
        return quadric_point(disk_to_quadric(s, t))

    return Immersion(
        name="hyperbolic-quadric",
        evaluator=evaluate,
        domain=hyperbolic_domain,
        expected=_hyperbolic_expectation(),
        description="P-normal surface over y1^2 + y2^2 - y3^2 = -1, K = -4/3",
    )


# ---
# End region: Hyperbolic example }}}
# ---

# ---
# Region: Test immersions {{{
# ---


def example_geodesic_product() -> Immersion:
    """Return the product of two geodesics, which is not almost complex."""

    def evaluate(s: float, t: float) -> NKPoint:
        return NKPoint(
            sl2.sl2_exp(TraceZero(s, 0.0, 0.0)), sl2.sl2_exp(TraceZero(0.0, t, 0.0))
        )

    def logs(s: float, t: float) -> LogDerivatives:
        zero = TraceZero(0.0, 0.0, 0.0)
        return LogDerivatives(
            a_s=TraceZero(1.0, 0.0, 0.0),
            a_t=zero,
            b_s=zero,
            b_t=TraceZero(0.0, 1.0, 0.0),
        )

    return Immersion(
        name="geodesic-product",
        evaluator=evaluate,
        domain=_everywhere,
        log_derivatives=logs,
        description="(exp(s e1), exp(t e2)), not almost complex",
    )


def example_diagonal() -> Immersion:
    """Return a surface on the diagonal A = B, whose tangent planes are P-fixed."""

    def evaluate(s: float, t: float) -> NKPoint:
        C = sl2.sl2_exp(TraceZero(s, 0.0, 0.0)).matrix @ sl2.sl2_exp(
            TraceZero(0.0, t, 0.0)
        ).matrix
        return _point(C, C)

    return Immersion(
        name="diagonal",
        evaluator=evaluate,
        domain=_everywhere,
        description="(C(s, t), C(s, t)) on the diagonal",
    )


def example_constant() -> Immersion:
    """Return the constant map to the identity."""
    return Immersion(
        name="constant",
        evaluator=lambda s, t: NKPoint.identity(),
        domain=_everywhere,
        description="constant map",
    )


def isometric_image(
    f: Immersion, left_a: Mat2, left_b: Mat2, right: Mat2
) -> Immersion:
    """Compose an immersion with the isometry (p, q) -> (L p R, M q R)."""
    right_inverse = right.inverse()

    def evaluate(s: float, t: float) -> NKPoint:
        point = f(s, t)
        return _point(
            left_a @ point.A.matrix @ right, left_b @ point.B.matrix @ right
        )

    def conjugate(x: TraceZero) -> TraceZero:
        return TraceZero.project(right_inverse @ x.to_mat2() @ right)[0]

    def logs(s: float, t: float) -> LogDerivatives:
        base = f.logs(s, t)
        return LogDerivatives(
            a_s=conjugate(base.a_s),
            a_t=conjugate(base.a_t),
            b_s=conjugate(base.b_s),
            b_t=conjugate(base.b_t),
        )

    return Immersion(
        name=f"{f.name}-moved",
        evaluator=evaluate,
        domain=f.domain,
        log_derivatives=logs if f.log_derivatives is not None else None,
        expected=f.expected,
        description=f"isometric image of {f.name}",
        flat_sign=f.flat_sign,
        tags=f.tags,
    )


# ---
# End region: Test immersions }}}
# ---

REGISTRY: Dict[str, Callable[[], Immersion]] = {
    "flat-positive": example_flat_positive,
    "flat-negative": example_flat_negative,
    "hyperbolic-st": example_hyperbolic,
    "hyperbolic-quadric": example_hyperbolic_quadric,
}


def registry_names() -> List[str]:
    """Return the registered immersion names in registry order."""
    return list(REGISTRY)


def lookup(name: str) -> Immersion:
    """Return the registered immersion with the given name."""
    try:
        return REGISTRY[name]()
    except KeyError as error:
        raise KeyError(
            f"Unknown surface '{name}'; choose one of {', '.join(REGISTRY)}"
        ) from error
