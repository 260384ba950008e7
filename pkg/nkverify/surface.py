"""Jets, induced geometry and curvature of immersed almost complex surfaces."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Generic, List, Sequence, Tuple, TypeVar

import numpy as np

from nkverify import constants, enumerations, sl2
from nkverify.immersions import (
    DomainError,
    Immersion,
    SingularPointError,
    epsilon,
    epsilon_derivatives,
)
from nkverify.manifold import (
    NKPoint,
    Tangent,
    ambient_to_nk,
    apply_J,
    apply_P,
    apply_Q,
    frame_norm,
    nk_metric,
    product_metric,
    tensor_G,
)
from nkverify.sl2 import Mat2, TraceZero

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)

# a raw second derivative (A_xy, B_xy) as a pair of matrices
RawPair = Tuple[Mat2, Mat2]

Vector = TypeVar("Vector")


class DegenerateMetricError(ValueError):
    """Raised when the induced metric or a normal vector is degenerate."""


# ---
# Region: Finite differences {{{
# ---


def _stencil_partials(
    func: Callable[[float, float], np.ndarray], s: float, t: float, step: float
) -> Dict[str, np.ndarray]:
    """Return first and second partials by central differences with one Richardson level."""
    sample = lru_cache(maxsize=None)(func)

    def estimate(h: float) -> Dict[str, np.ndarray]:
        center = sample(s, t)
        (east, west) = (sample(s + h, t), sample(s - h, t))
        (north, south) = (sample(s, t + h), sample(s, t - h))
        mixed = (
            sample(s + h, t + h)
            - sample(s - h, t + h)
            - sample(s + h, t - h)
            + sample(s - h, t - h)
        )
        return {
            "s": (east - west) / (2 * h),
            "t": (north - south) / (2 * h),
            "ss": (east - 2 * center + west) / (h * h),
            "tt": (north - 2 * center + south) / (h * h),
            "st": mixed / (4 * h * h),
        }

    coarse = estimate(step)
    fine = estimate(step / 2)
    return {key: (4 * fine[key] - coarse[key]) / 3 for key in coarse}


def _position_array(f: Immersion, s: float, t: float) -> np.ndarray:
    point = f(s, t)
    return np.array([point.A.matrix.to_array(), point.B.matrix.to_array()])


def _logs_array(f: Immersion, s: float, t: float) -> np.ndarray:
    logs = f.logs(s, t)
    return np.array(
        [x.to_mat2().to_array() for x in (logs.a_s, logs.a_t, logs.b_s, logs.b_t)]
    )


# ---
# End region: Finite differences }}}
# ---

# ---
# Region: Jets {{{
# ---


@dataclass(frozen=True)
class SurfaceJet:
    """First and second derivative data of an immersion at one parameter value."""

    point: NKPoint
    Fs: Tangent
    Ft: Tangent
    Fss: RawPair
    Fst: RawPair
    Fts: RawPair
    Ftt: RawPair
    step: float
    trace_defect: float
    analytic: bool


def _pair(array: np.ndarray) -> RawPair:
    return (Mat2.from_array(array[0]), Mat2.from_array(array[1]))


def _log_derivative(inverse: np.ndarray, derivative: np.ndarray) -> Tuple[TraceZero, float]:
    (coefficients, trace) = TraceZero.project(Mat2.from_array(inverse @ derivative))
    return (coefficients, abs(float(trace)))


def numeric_jet(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> SurfaceJet:
    """Compute a jet purely by finite differences of the position."""
    if step <= 0:
        raise ValueError("Jet step must be positive")
    partials = _stencil_partials(lambda u, v: _position_array(f, u, v), s, t, step)
    point = f(s, t)
    try:
        inverses = [point.A.matrix.inverse().to_array(), point.B.matrix.inverse().to_array()]
    except sl2.SingularMatrixError as error:
        raise SingularPointError(str(error)) from error
    (a_s, defect_a_s) = _log_derivative(inverses[0], partials["s"][0])
    (a_t, defect_a_t) = _log_derivative(inverses[0], partials["t"][0])
    (b_s, defect_b_s) = _log_derivative(inverses[1], partials["s"][1])
    (b_t, defect_b_t) = _log_derivative(inverses[1], partials["t"][1])
    defect = max(defect_a_s, defect_a_t, defect_b_s, defect_b_t)
    logger.debug(f"Numeric jet of {f.name} at ({s}, {t}) has trace defect {defect:.3e}")
    mixed = _pair(partials["st"])
    return SurfaceJet(
        point=point,
        Fs=Tangent(point, a_s, b_s),
        Ft=Tangent(point, a_t, b_t),
        Fss=_pair(partials["ss"]),
        Fst=mixed,
        Fts=mixed,
        Ftt=_pair(partials["tt"]),
        step=step,
        trace_defect=defect,
        analytic=False,
    )


def analytic_jet(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> SurfaceJet:
    """Compute a jet from the analytic log derivatives of an immersion.

    Second derivatives come from central differences of the analytic first
    derivative fields, so F_st and F_ts are computed independently.
    """
    point = f(s, t)
    logs = f.logs(s, t)
    rates = _stencil_partials(lambda u, v: _logs_array(f, u, v), s, t, step)
    current = _logs_array(f, s, t)
    (A, B) = (point.A.matrix.to_array(), point.B.matrix.to_array())
    (a_s, a_t, b_s, b_t) = current
    (a_s_rate_s, a_t_rate_s, b_s_rate_s, b_t_rate_s) = rates["s"]
    (a_s_rate_t, a_t_rate_t, b_s_rate_t, b_t_rate_t) = rates["t"]
    return SurfaceJet(
        point=point,
        Fs=Tangent(point, logs.a_s, logs.b_s),
        Ft=Tangent(point, logs.a_t, logs.b_t),
        Fss=(
            Mat2.from_array(A @ (a_s @ a_s + a_s_rate_s)),
            Mat2.from_array(B @ (b_s @ b_s + b_s_rate_s)),
        ),
        Fst=(
            Mat2.from_array(A @ (a_t @ a_s + a_s_rate_t)),
            Mat2.from_array(B @ (b_t @ b_s + b_s_rate_t)),
        ),
        Fts=(
            Mat2.from_array(A @ (a_s @ a_t + a_t_rate_s)),
            Mat2.from_array(B @ (b_s @ b_t + b_t_rate_s)),
        ),
        Ftt=(
            Mat2.from_array(A @ (a_t @ a_t + a_t_rate_t)),
            Mat2.from_array(B @ (b_t @ b_t + b_t_rate_t)),
        ),
        step=step,
        trace_defect=0.0,
        analytic=True,
    )


@lru_cache(maxsize=4096)
def jet(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> SurfaceJet:
    """Return the analytic jet when derivatives are known and a numeric jet otherwise."""
    if f.log_derivatives is not None:
        return analytic_jet(f, s, t, step)
    return numeric_jet(f, s, t, step)


def jet_gap(f: Immersion, s: float, t: float, step: float) -> float:
    """Return the largest gap between numeric and analytic first derivatives."""
    numeric = numeric_jet(f, s, t, step)
    logs = f.logs(s, t)
    gaps = [
        _coefficient_norm(numeric.Fs.alpha - logs.a_s),
        _coefficient_norm(numeric.Fs.beta - logs.b_s),
        _coefficient_norm(numeric.Ft.alpha - logs.a_t),
        _coefficient_norm(numeric.Ft.beta - logs.b_t),
    ]
    return max(gaps)


def _coefficient_norm(x: TraceZero) -> float:
    return max(abs(float(c)) for c in x)


# ---
# End region: Jets }}}
# ---

# ---
# Region: Induced metric {{{
# ---


@dataclass(frozen=True)
class InducedMetric:
    """The induced metric g11 ds^2 + 2 g12 ds dt + g22 dt^2."""

    g11: float
    g12: float
    g22: float

    def matrix(self) -> np.ndarray:
        """Return the symmetric 2x2 matrix of the metric."""
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def det(self) -> float:
        """Return the determinant g11 g22 - g12^2."""
        return self.g11 * self.g22 - self.g12 * self.g12

    def scale(self) -> float:
        """Return the size of the largest entry, at least one."""
        return max(1.0, abs(self.g11), abs(self.g12), abs(self.g22))

    def is_degenerate(self) -> bool:
        """Determine whether the determinant vanishes within tolerance."""
        return abs(self.det()) <= constants.tolerances.Degenerate_Metric * self.scale() ** 2

    def inverse(self) -> np.ndarray:
        """Return the inverse matrix or raise an error for a degenerate metric."""
        if self.is_degenerate():
            raise DegenerateMetricError(f"Induced metric {self} is degenerate")
        return np.linalg.inv(self.matrix())

    def is_conformal(self, tolerance: float = constants.tolerances.Algebraic) -> bool:
        """Determine whether g11 = g22 and g12 = 0 within a relative tolerance."""
        bound = tolerance * self.scale()
        return abs(self.g12) <= bound and abs(self.g11 - self.g22) <= bound

    @property
    def conformal_factor(self) -> float:
        """Return w with |g11| = e^(2w) for a conformal metric."""
        if not self.is_conformal() or self.g11 == 0:
            raise DegenerateMetricError(f"Induced metric {self} is not conformal")
        return 0.5 * math.log(abs(self.g11))

    def signature(self) -> enumerations.MetricSignature:
        """Classify the metric by the signs of its eigenvalues."""
        if self.is_degenerate():
            return enumerations.MetricSignature.DEGENERATE
        eigenvalues = np.linalg.eigvalsh(self.matrix())
        if np.all(eigenvalues > 0):
            return enumerations.MetricSignature.POSITIVE_DEFINITE
        if np.all(eigenvalues < 0):
            return enumerations.MetricSignature.NEGATIVE_DEFINITE
        return enumerations.MetricSignature.INDEFINITE


def metric_from_jet(surface_jet: SurfaceJet) -> InducedMetric:
    """Return the induced metric of a jet."""
    (Fs, Ft) = (surface_jet.Fs, surface_jet.Ft)
    return InducedMetric(
        float(nk_metric(Fs, Fs)), float(nk_metric(Fs, Ft)), float(nk_metric(Ft, Ft))
    )


def induced_metric(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> InducedMetric:
    """Return the induced metric of an immersion at a parameter value."""
    return metric_from_jet(jet(f, s, t, step))


def almost_complex_residual(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> float:
    """Return the largest frame coefficient of Ft - J Fs."""
    surface_jet = jet(f, s, t, step)
    return frame_norm(surface_jet.Ft - apply_J(surface_jet.Fs))


def tangential_part(
    surface_jet: SurfaceJet, metric_inverse: np.ndarray, vector: Tangent
) -> Tangent:
    """Return the g-orthogonal projection of a vector onto span{Fs, Ft}."""
    (Fs, Ft) = (surface_jet.Fs, surface_jet.Ft)
    pairings = np.array([float(nk_metric(vector, Fs)), float(nk_metric(vector, Ft))])
    (c1, c2) = metric_inverse @ pairings
    return Fs * float(c1) + Ft * float(c2)


def normal_part(
    surface_jet: SurfaceJet, metric_inverse: np.ndarray, vector: Tangent
) -> Tangent:
    """Return the component of a vector g-orthogonal to the tangent plane."""
    return vector - tangential_part(surface_jet, metric_inverse, vector)


# ---
# End region: Induced metric }}}
# ---

# ---
# Region: Almost product structure {{{
# ---


def p_action(surface_jet: SurfaceJet) -> np.ndarray:
    """Return the rows of coefficients of P Fs and P Ft in the basis (Fs, Ft)."""
    metric = metric_from_jet(surface_jet)
    inverse = metric.inverse()
    rows = []
    for vector in (surface_jet.Fs, surface_jet.Ft):
        image = apply_P(vector)
        pairings = np.array(
            [
                float(nk_metric(image, surface_jet.Fs)),
                float(nk_metric(image, surface_jet.Ft)),
            ]
        )
        rows.append(inverse @ pairings)
    return np.array(rows)


def classify_tangency(
    surface_jet: SurfaceJet, tolerance: float = constants.tolerances.Algebraic
) -> enumerations.PTangency:
    """Classify how P acts on the tangent plane of a jet."""
    metric = metric_from_jet(surface_jet)
    inverse = metric.inverse()
    bound = tolerance * metric.scale()
    (Fs, Ft) = (surface_jet.Fs, surface_jet.Ft)
    (PFs, PFt) = (apply_P(Fs), apply_P(Ft))
    pairings = [nk_metric(PFs, Fs), nk_metric(PFs, Ft), nk_metric(PFt, Ft)]
    if max(abs(float(x)) for x in pairings) <= bound:
        return enumerations.PTangency.P_NORMAL
    leftovers = [
        frame_norm(normal_part(surface_jet, inverse, PFs)),
        frame_norm(normal_part(surface_jet, inverse, PFt)),
    ]
    if max(leftovers) <= bound:
        return enumerations.PTangency.P_TANGENT
    return enumerations.PTangency.MIXED


def p_tangency(
    f: Immersion,
    s: float,
    t: float,
    step: float = constants.tolerances.Jet_Step,
    tolerance: float = constants.tolerances.Algebraic,
) -> enumerations.PTangency:
    """Classify an immersion at a point as P-tangent, P-normal or mixed."""
    return classify_tangency(jet(f, s, t, step), tolerance)


def p_normal_frame_residual(surface_jet: SurfaceJet) -> float:
    """Return the largest deviation of v, Jv, Pv, JPv, G(v, Pv), JG(v, Pv) from their Gram matrix.

    The vector v is Fs scaled to unit length, and the expected Gram matrix
    is diag(1, 1, 1, 1, -2/3, -2/3).
    """
    metric = metric_from_jet(surface_jet)
    if metric.g11 <= 0:
        raise DegenerateMetricError("The first coordinate vector is not spacelike")
    v = surface_jet.Fs * (1.0 / math.sqrt(metric.g11))
    Pv = apply_P(v)
    product = tensor_G(v, Pv)
    vectors = [v, apply_J(v), Pv, apply_J(Pv), product, apply_J(product)]
    expected = np.diag([1.0, 1.0, 1.0, 1.0, -2.0 / 3.0, -2.0 / 3.0])
    gram = np.array([[float(nk_metric(x, y)) for y in vectors] for x in vectors])
    return float(np.max(np.abs(gram - expected)))


# ---
# End region: Almost product structure }}}
# ---

# ---
# Region: Second fundamental form {{{
# ---


@dataclass(frozen=True)
class SecondFundamentalForm(Generic[Vector]):
    """The normal components h(Fs, Fs), h(Fs, Ft) and h(Ft, Ft)."""

    h_ss: Vector
    h_st: Vector
    h_tt: Vector

    def components(self) -> Tuple[Vector, Vector, Vector]:
        """Return the three components in the order ss, st, tt."""
        return (self.h_ss, self.h_st, self.h_tt)


def second_fundamental_form_of_jet(
    surface_jet: SurfaceJet,
) -> SecondFundamentalForm[Tangent]:
    """Return the second fundamental form from the Gauss formula at a jet."""
    inverse = metric_from_jet(surface_jet).inverse()
    (Fs, Ft, point) = (surface_jet.Fs, surface_jet.Ft, surface_jet.point)
    derivatives = (
        ambient_to_nk(surface_jet.Fss, Fs, Fs, point),
        ambient_to_nk(surface_jet.Fst, Fs, Ft, point),
        ambient_to_nk(surface_jet.Ftt, Ft, Ft, point),
    )
    (h_ss, h_st, h_tt) = (
        normal_part(surface_jet, inverse, derivative) for derivative in derivatives
    )
    return SecondFundamentalForm(h_ss, h_st, h_tt)


def second_fundamental_form(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> SecondFundamentalForm[Tangent]:
    """Return the second fundamental form of an immersion at a parameter value."""
    return second_fundamental_form_of_jet(jet(f, s, t, step))


def sff_norms(sff: SecondFundamentalForm[Tangent]) -> Tuple[float, float, float]:
    """Return the frame norm of each component."""
    return tuple(frame_norm(h) for h in sff.components())  # type: ignore[return-value]


def shape_operator(
    sff: SecondFundamentalForm[Vector],
    xi: Vector,
    metric: InducedMetric,
    pairing: Callable[[Vector, Vector], object] = nk_metric,  # type: ignore[assignment]
) -> np.ndarray:
    """Return the matrix of the shape operator of a normal vector.

    The pairings g(h_ij, xi) are multiplied by the sign of g(xi, xi), so the
    result is linear in xi and equals the scalar shape operator of h = k xi
    when xi is a unit normal of either causal character.
    """
    length = float(pairing(xi, xi))  # type: ignore[arg-type]
    if abs(length) <= constants.tolerances.Degenerate_Metric:
        raise DegenerateMetricError("Normal vector is null")
    pairings = [float(pairing(h, xi)) for h in sff.components()]  # type: ignore[arg-type]
    values = np.array([[pairings[0], pairings[1]], [pairings[1], pairings[2]]])
    return math.copysign(1.0, length) * (metric.inverse() @ values)


# ---
# End region: Second fundamental form }}}
# ---

# ---
# Region: Curvature {{{
# ---


def _metric_array(f: Immersion, jet_step: float) -> Callable[[float, float], np.ndarray]:
    def evaluate(u: float, v: float) -> np.ndarray:
        metric = metric_from_jet(jet(f, u, v, jet_step))
        return np.array([metric.g11, metric.g12, metric.g22])

    return evaluate


def brioschi(metric: InducedMetric, partials: Dict[str, np.ndarray]) -> float:
    """Return the Gaussian curvature from the Brioschi formula."""
    (E, F, G) = (metric.g11, metric.g12, metric.g22)
    (E_s, F_s, G_s) = partials["s"]
    (E_t, F_t, G_t) = partials["t"]
    E_tt = partials["tt"][0]
    F_st = partials["st"][1]
    G_ss = partials["ss"][2]
    first = np.array(
        [
            [-0.5 * E_tt + F_st - 0.5 * G_ss, 0.5 * E_s, F_s - 0.5 * E_t],
            [F_t - 0.5 * G_s, E, F],
            [0.5 * G_t, F, G],
        ]
    )
    second = np.array(
        [[0.0, 0.5 * E_t, 0.5 * G_s], [0.5 * E_t, E, F], [0.5 * G_s, F, G]]
    )
    return float(
        (np.linalg.det(first) - np.linalg.det(second)) / (E * G - F * F) ** 2
    )


def gauss_curvature(
    f: Immersion,
    s: float,
    t: float,
    step: float = constants.tolerances.Curvature_Step,
    jet_step: float = constants.tolerances.Jet_Step,
) -> float:
    """Estimate the Gaussian curvature of the induced metric.

    A conformal metric lam (ds^2 + dt^2) uses K = -Laplacian(ln|lam|)/(2 lam)
    and any other metric uses the Brioschi formula. Both rely on Richardson
    extrapolated central differences of the metric.
    """
    center = induced_metric(f, s, t, jet_step)
    if center.is_degenerate():
        raise DegenerateMetricError(f"Induced metric {center} is degenerate")
    if center.is_conformal():

        def log_factor(u: float, v: float) -> np.ndarray:
            return np.array([math.log(abs(induced_metric(f, u, v, jet_step).g11))])

        partials = _stencil_partials(log_factor, s, t, step)
        laplacian = float(partials["ss"][0] + partials["tt"][0])
        return -laplacian / (2.0 * center.g11)
    partials = _stencil_partials(_metric_array(f, jet_step), s, t, step)
    return brioschi(center, partials)


# ---
# End region: Curvature }}}
# ---

# ---
# Region: Integrability {{{
# ---


@dataclass(frozen=True)
class LogRates:
    """Partial derivatives of the first-factor log derivatives a_s and a_t."""

    a_s: TraceZero
    a_t: TraceZero
    a_s_along_s: TraceZero
    a_s_along_t: TraceZero
    a_t_along_s: TraceZero
    a_t_along_t: TraceZero


def log_rates(surface_jet: SurfaceJet) -> LogRates:
    """Differentiate A^-1 A_s and A^-1 A_t using the raw second derivatives."""
    inverse = surface_jet.point.A.matrix.inverse().to_array()
    a_s = surface_jet.Fs.alpha
    a_t = surface_jet.Ft.alpha
    (m_s, m_t) = (a_s.to_mat2().to_array(), a_t.to_mat2().to_array())

    def rate(raw: Mat2, left: np.ndarray, right: np.ndarray) -> TraceZero:
        return TraceZero.project(Mat2.from_array(inverse @ raw.to_array() - left @ right))[0]

    return LogRates(
        a_s=a_s,
        a_t=a_t,
        a_s_along_s=rate(surface_jet.Fss[0], m_s, m_s),
        a_s_along_t=rate(surface_jet.Fst[0], m_t, m_s),
        a_t_along_s=rate(surface_jet.Fts[0], m_s, m_t),
        a_t_along_t=rate(surface_jet.Ftt[0], m_t, m_t),
    )


def integrability_residual(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> Tuple[float, float]:
    """Return the residuals of both integrability conditions on A^-1 A_s and A^-1 A_t."""
    rates = log_rates(jet(f, s, t, step))
    product = sl2.cross(rates.a_s, rates.a_t)
    first = rates.a_s_along_t - rates.a_t_along_s - product * 2.0
    second = rates.a_s_along_s + rates.a_t_along_t + product * (2.0 / SQRT3)
    return (_coefficient_norm(first), _coefficient_norm(second))


def rotated_frame(
    rates: LogRates, angle: float = math.pi / 3
) -> Tuple[TraceZero, TraceZero]:
    """Rotate the pair (a_s, a_t) by an angle."""
    (c, s) = (math.cos(angle), math.sin(angle))
    return (rates.a_s * c + rates.a_t * s, rates.a_s * (-s) + rates.a_t * c)


def rotated_integrability_residual(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> Tuple[float, float]:
    """Return the residuals of the integrability conditions after a rotation by pi/3."""
    rates = log_rates(jet(f, s, t, step))
    (c, sn) = (0.5, 0.5 * SQRT3)
    (alpha, beta) = rotated_frame(rates)
    alpha_t = rates.a_s_along_t * c + rates.a_t_along_t * sn
    alpha_s = rates.a_s_along_s * c + rates.a_t_along_s * sn
    beta_s = rates.a_s_along_s * (-sn) + rates.a_t_along_s * c
    beta_t = rates.a_s_along_t * (-sn) + rates.a_t_along_t * c
    first = alpha_t - beta_s
    second = alpha_s + beta_t + sl2.cross(alpha, beta) * (4.0 / SQRT3)
    return (_coefficient_norm(first), _coefficient_norm(second))


# ---
# End region: Integrability }}}
# ---

# ---
# Region: Surface diagnostics {{{
# ---


def grid_points(radius: float, count: int) -> List[Tuple[float, float]]:
    """Return a count x count grid over the square [-radius, radius]^2."""
    if count < 1:
        raise ValueError("Grid size must be at least one")
    axis = [0.0] if count == 1 else [float(x) for x in np.linspace(-radius, radius, count)]
    return [(s, t) for s in axis for t in axis]


def membership_residual(f: Immersion, s: float, t: float) -> float:
    """Return the larger of |<A, A> + 1| and |<B, B> + 1|."""
    point = f(s, t)
    return max(point.A.membership_residual(), point.B.membership_residual())


def flat_second_derivative_residual(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> float:
    """Return the deviation of a flat example from F_ss = 3F/2, F_tt = F/2, F_st = sqrt(3) QF/2.

    The signs of the three right-hand sides flip for the negative example.
    """
    if f.flat_sign == 0:
        raise ValueError(f"Immersion {f.name} is not a flat example")
    surface_jet = jet(f, s, t, step)
    (A, B) = (x.to_array() for x in surface_jet.point.position())
    sign = float(f.flat_sign)
    expected = {
        "ss": (1.5 * sign * A, 1.5 * sign * B),
        "tt": (0.5 * sign * A, 0.5 * sign * B),
        "st": (-0.5 * SQRT3 * sign * A, 0.5 * SQRT3 * sign * B),
    }
    actual = {"ss": surface_jet.Fss, "tt": surface_jet.Ftt, "st": surface_jet.Fst}
    gaps = [
        float(np.max(np.abs(actual[key][factor].to_array() - expected[key][factor])))
        for key in expected
        for factor in (0, 1)
    ]
    return max(gaps)


def product_pairing_residual(
    f: Immersion, s: float, t: float, step: float = constants.tolerances.Jet_Step
) -> float:
    """Return the deviation of the product metric pairings of a flat example.

    Expected values are <Fs, Fs> = 3, <Ft, Ft> = 1, <Fs, Ft> = 0, <Fs, QFs> = 0,
    <Ft, QFt> = 0 and <Fs, QFt> = <Ft, QFs> = sqrt(3), all negated for the
    negative example.
    """
    if f.flat_sign == 0:
        raise ValueError(f"Immersion {f.name} is not a flat example")
    surface_jet = jet(f, s, t, step)
    (Fs, Ft) = (surface_jet.Fs, surface_jet.Ft)
    sign = float(f.flat_sign)
    checks = [
        (product_metric(Fs, Fs), 3.0 * sign),
        (product_metric(Ft, Ft), sign),
        (product_metric(Fs, Ft), 0.0),
        (product_metric(Fs, apply_Q(Fs)), 0.0),
        (product_metric(Ft, apply_Q(Ft)), 0.0),
        (product_metric(Fs, apply_Q(Ft)), SQRT3 * sign),
        (product_metric(Ft, apply_Q(Fs)), SQRT3 * sign),
    ]
    return max(abs(float(actual) - expected) for (actual, expected) in checks)


def chart_agreement(
    first: Immersion, second: Immersion, points: Sequence[Tuple[float, float]]
) -> float:
    """Return the largest entry gap between two immersions on matched points."""
    gaps = []
    for (s, t) in points:
        left = _position_array(first, s, t)
        right = _position_array(second, s, t)
        gaps.append(float(np.max(np.abs(left - right))))
    return max(gaps)


def check_domain(f: Immersion, points: Sequence[Tuple[float, float]]) -> None:
    """Raise an error if any sample point lies outside the domain."""
    for (s, t) in points:
        if not f.contains(s, t):
            raise DomainError(f"Sample ({s}, {t}) is outside the domain of {f.name}")


# ---
# End region: Surface diagnostics }}}
# ---

# ---
# Region: Hyperboloid surface {{{
# ---


@dataclass(frozen=True)
class EpsilonReport:
    """Residuals of the hyperboloid surface e(s, t) inside the trace-free algebra."""

    origin: TraceZero
    quadric: float
    derivatives: float
    equations: float
    mixed_form: float
    umbilic: float
    shape_operator: float


def _epsilon_first(s: float, t: float) -> np.ndarray:
    (along_s, along_t) = epsilon_derivatives(s, t)
    return np.array(
        [[float(c) for c in along_s], [float(c) for c in along_t]]
    )


def _as_trace_zero(row: np.ndarray) -> TraceZero:
    return TraceZero(float(row[0]), float(row[1]), float(row[2]))


def epsilon_surface_check(
    f: Immersion,
    points: Sequence[Tuple[float, float]],
    step: float = constants.tolerances.Jet_Step,
) -> EpsilonReport:
    """Check the hyperboloid surface behind the P-normal example.

    The surface lies on <e, e> = -3/4, its derivatives agree with the
    rotated log derivatives of the immersion, it satisfies its structure
    equations and it is totally umbilical with shape operator (2/sqrt(3)) I.
    """
    check_domain(f, points)
    maxima = {key: 0.0 for key in ("quadric", "derivatives", "equations", "mixed", "umbilic", "shape")}

    def record(key: str, amount: float) -> None:
        maxima[key] = max(maxima[key], amount)

    for (s, t) in points:
        position = epsilon(s, t)
        record("quadric", abs(float(position.inner(position)) + 0.75))
        first = _epsilon_first(s, t)
        (e_s, e_t) = (_as_trace_zero(first[0]), _as_trace_zero(first[1]))
        (alpha, beta) = rotated_frame(log_rates(jet(f, s, t, step)))
        record(
            "derivatives",
            max(_coefficient_norm(e_s - alpha), _coefficient_norm(e_t - beta)),
        )
        # conformal factor e^(2w) = <e_s, e_s> and its partials
        omega = _stencil_partials(
            lambda u, v: np.array([0.5 * math.log(float(_row_inner(_epsilon_first(u, v)[0])))]),
            s,
            t,
            step,
        )
        (w_s, w_t) = (float(omega["s"][0]), float(omega["t"][0]))
        second = _stencil_partials(_epsilon_first, s, t, step)
        e_ss = _as_trace_zero(second["s"][0])
        e_st = _as_trace_zero(second["t"][0])
        e_tt = _as_trace_zero(second["t"][1])
        product = sl2.cross(e_s, e_t)
        bend = product * (2.0 / SQRT3)
        residuals = [
            e_ss - (e_t * (-w_t) + e_s * w_s - bend),
            e_st - (e_s * w_t + e_t * w_s),
            e_tt - (e_t * w_t - e_s * w_s - bend),
        ]
        record("equations", max(_coefficient_norm(r) for r in residuals))
        factor = float(e_s.inner(e_s))
        xi = product * (-1.0 / factor)
        xi_length = float(xi.inner(xi))
        (h_ss, h_st, h_tt) = (
            xi * (float(x.inner(xi)) / xi_length) for x in (e_ss, e_st, e_tt)
        )
        record("mixed", _coefficient_norm(h_st))
        record("umbilic", _coefficient_norm(h_ss - xi * (2.0 / SQRT3 * factor)))
        metric = InducedMetric(factor, float(e_s.inner(e_t)), float(e_t.inner(e_t)))
        shape = shape_operator(
            SecondFundamentalForm(h_ss, h_st, h_tt),
            xi,
            metric,
            pairing=lambda x, y: x.inner(y),
        )
        record("shape", float(np.max(np.abs(shape - (2.0 / SQRT3) * np.eye(2)))))
    return EpsilonReport(
        origin=epsilon(0.0, 0.0),
        quadric=maxima["quadric"],
        derivatives=maxima["derivatives"],
        equations=maxima["equations"],
        mixed_form=maxima["mixed"],
        umbilic=maxima["umbilic"],
        shape_operator=maxima["shape"],
    )


def _row_inner(row: np.ndarray) -> float:
    return float(row[0] * row[0] + row[1] * row[1] - row[2] * row[2])


# ---
# End region: Hyperboloid surface }}}
# ---
