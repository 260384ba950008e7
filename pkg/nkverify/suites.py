"""Run the verification suites and collect one record per check."""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from nkverify import (
    certificate,
    connection,
    constants,
    enumerations,
    field,
    frame,
    immersions,
    manifold,
    results,
    sl2,
    surface,
    util,
)
from nkverify.enumerations import RecordKind
from nkverify.immersions import Immersion
from nkverify.manifold import FRAME, NKPoint, Tangent
from nkverify.sl2 import Mat2, TraceZero

logger = logging.getLogger(__name__)

Witness = Optional[Dict[str, str]]
Outcome = Tuple[Union[field.Number, float], Witness]
ToleranceRule = Callable[[results.SuiteConfig], Optional[float]]
Point = Tuple[float, float]

# ---
# Region: Check registry {{{
# ---


def exact_rule(cfg: results.SuiteConfig) -> Optional[float]:
    """Use no tolerance, since the check is decided in exact arithmetic."""
    return None


def algebraic_rule(cfg: results.SuiteConfig) -> Optional[float]:
    """Use the algebraic tolerance of the configuration."""
    return cfg.tolerance


def curvature_rule(cfg: results.SuiteConfig) -> Optional[float]:
    """Use the curvature tolerance of the configuration."""
    return cfg.curvature_tolerance


def convergence_rule(cfg: results.SuiteConfig) -> Optional[float]:
    """Accept only a non-positive shortfall of the convergence ratio."""
    return 0.0


def scaled_rule(base: float) -> ToleranceRule:
    """Scale a base tolerance by the ratio of the configured algebraic tolerance to its default."""

    def rule(cfg: results.SuiteConfig) -> Optional[float]:
        return base * cfg.tolerance / constants.tolerances.Algebraic

    return rule


membership_rule = scaled_rule(constants.tolerances.Membership)
sampled_rule = scaled_rule(constants.tolerances.Sampled_Identity)
second_order_rule = scaled_rule(constants.tolerances.Second_Order)


@dataclass(frozen=True)
class RegisteredCheck:
    """A named check together with the way its outcome is decided."""

    name: str
    kind: RecordKind
    run: Callable[[results.SuiteConfig], Outcome]
    rule: ToleranceRule = exact_rule


def _render_tolerance(kind: RecordKind, tolerance: Optional[float]) -> str:
    if kind == RecordKind.INFORMATIONAL:
        return constants.humanreadable.Informational
    if kind == RecordKind.EXACT or tolerance is None:
        return util.format_tolerance(None)
    return util.format_tolerance(tolerance)


def decide(kind: RecordKind, residual: Union[field.Number, float], tolerance: Optional[float]) -> bool:
    """Decide whether a residual passes for the kind of record."""
    if kind == RecordKind.INFORMATIONAL:
        return True
    if kind == RecordKind.EXACT or tolerance is None:
        return residual == 0
    # a nan residual never passes
    return float(residual) <= tolerance


def build_record(check: RegisteredCheck, cfg: results.SuiteConfig) -> results.CheckRecord:
    """Run one check and turn its outcome, or its failure, into a record."""
    tolerance = check.rule(cfg)
    rendered_tolerance = _render_tolerance(check.kind, tolerance)
    logger.debug(f"Running check {check.name}")
    try:
        (residual, witness) = check.run(cfg)
    except Exception as error:
        logger.warning(f"Check {check.name} raised {type(error).__name__}: {error}")
        return results.CheckRecord(
            name=check.name,
            kind=check.kind,
            max_residual=util.format_residual(math.nan),
            tolerance=rendered_tolerance,
            passed=False,
            witness={"error": f"{type(error).__name__}: {error}"},
        )
    passed = decide(check.kind, residual, tolerance)
    if not passed:
        logger.warning(f"Check {check.name} failed with residual {residual}")
    return results.CheckRecord(
        name=check.name,
        kind=check.kind,
        max_residual=util.format_residual(0 if residual == 0 else residual),
        tolerance=rendered_tolerance,
        passed=passed,
        witness=witness,
    )


def run_checks(
    checks: Sequence[RegisteredCheck], cfg: results.SuiteConfig
) -> List[results.CheckRecord]:
    """Run every check in registry order; a failing check never stops the run."""
    return [build_record(check, cfg) for check in checks]


def _ledger(discrepancies: Sequence[connection.Discrepancy]) -> Witness:
    witness = {"discrepancies": str(len(discrepancies))}
    for discrepancy in discrepancies:
        witness[discrepancy.entry] = (
            f"printed {discrepancy.printed}; derived {discrepancy.derived}"
        )
    return witness


def _worst(values: Sequence[Union[field.Number, float]]) -> float:
    return max((field.magnitude(x) for x in values), default=0.0)


# ---
# End region: Check registry }}}
# ---

# ---
# Region: Structure suite {{{
# ---


def _identity_frame() -> Dict[manifold.FrameIndex, Tangent]:
    return manifold.frame_at(NKPoint.identity())


def _pair_residuals(X: Tangent, Y: Tangent) -> List[float]:
    """Return the residuals of the nearly Kähler identities on a pair of vectors."""
    (G, g) = (manifold.tensor_G, manifold.nk_metric)
    (J, P, Q) = (manifold.apply_J, manifold.apply_P, manifold.apply_Q)
    norm = manifold.frame_norm
    return [
        norm(G(X, X)),
        norm(G(X, Y) + G(Y, X)),
        norm(G(X, J(Y)) + J(G(X, Y))),
        norm(P(G(X, Y)) + G(P(X), P(Y))),
        norm(P(J(X)) + J(P(X))),
        norm(P(P(X)) - X),
        norm(Q(Q(X)) - X),
        norm(J(J(X)) + X),
        norm(manifold.q_from_p_residual(X)),
        norm(manifold.p_from_q(X) - P(X)),
        field.magnitude(g(J(X), J(Y)) - g(X, Y)),
        field.magnitude(g(P(X), P(Y)) - g(X, Y)),
        field.magnitude(manifold.q_metric_residual(X, Y)),
        field.magnitude(manifold.product_from_q_residual(X, Y)),
        field.magnitude(manifold.product_from_g_residual(X, Y)),
        field.magnitude(manifold.g_from_product_residual(X, Y)),
    ]


def _skew_residual(X: Tangent, Y: Tangent, Z: Tangent) -> float:
    (G, g) = (manifold.tensor_G, manifold.nk_metric)
    return field.magnitude(g(G(X, Y), Z) + g(Y, G(X, Z)))


def check_levi_civita_table(cfg: results.SuiteConfig) -> Outcome:
    """Compare the printed connection table with the Koszul formula."""
    table = {
        (i, j): connection.levi_civita_frame(i, j)
        for (i, j) in itertools.product(FRAME, repeat=2)
    }
    (worst, discrepancies) = connection.compare_table(
        "nabla", table, connection.koszul_connection
    )
    return (
        worst,
        {
            "entries": str(len(table)),
            "disagreements": str(len(discrepancies)),
        },
    )


def check_nabla_j_table(cfg: results.SuiteConfig) -> Outcome:
    """Compare the printed entries of the nabla J table with the Leibniz rule."""
    (worst, discrepancies) = connection.compare_table(
        "nablaJ", dict(connection.PRINTED_NABLA_J), connection.nabla_J_frame
    )
    blanks = [d for d in discrepancies if d.printed == "blank"]
    return (
        worst,
        {
            "entries": str(len(connection.PRINTED_NABLA_J) - len(blanks)),
            "blank entries": str(len(blanks)),
        },
    )


def check_bracket_ledger(cfg: results.SuiteConfig) -> Outcome:
    """List the printed bracket lines that disagree with the commutators."""
    return (0, _ledger(connection.bracket_discrepancies()))


def check_j_ledger(cfg: results.SuiteConfig) -> Outcome:
    """List the printed J lines that disagree with the defining formula."""
    return (0, _ledger(connection.j_table_discrepancies()))


def check_nabla_j_ledger(cfg: results.SuiteConfig) -> Outcome:
    """List the blank or disagreeing entries of the printed nabla J table."""
    (_, discrepancies) = connection.compare_table(
        "nablaJ", dict(connection.PRINTED_NABLA_J), connection.nabla_J_frame
    )
    return (0, _ledger(discrepancies))


def check_metric_table(cfg: results.SuiteConfig) -> Outcome:
    """Compare the printed values of g on the frame with the metric formula."""
    gram = connection.gram_matrix()
    differences = [
        connection.printed_metric(i, j) - gram[m][n]
        for (m, i) in enumerate(FRAME)
        for (n, j) in enumerate(FRAME)
    ]
    return (_worst(differences), None)


def check_torsion_free(cfg: results.SuiteConfig) -> Outcome:
    """Confirm nabla_X Y - nabla_Y X = [X, Y] on every frame pair."""
    differences = [
        (
            connection.koszul_connection(i, j)
            - connection.koszul_connection(j, i)
            - connection.lie_bracket(i, j)
        ).max_abs()
        for (i, j) in itertools.product(FRAME, repeat=2)
    ]
    return (max(differences), None)


def check_metric_compatibility(cfg: results.SuiteConfig) -> Outcome:
    """Confirm g(nabla_k X_i, X_j) + g(X_i, nabla_k X_j) = 0 on every frame triple."""
    unit = {index: manifold.FrameCoeffs.unit(index) for index in FRAME}
    values = [
        connection.frame_metric(connection.koszul_connection(k, i), unit[j])
        + connection.frame_metric(unit[i], connection.koszul_connection(k, j))
        for (k, i, j) in itertools.product(FRAME, repeat=3)
    ]
    return (_worst(values), None)


def check_nearly_kaehler(cfg: results.SuiteConfig) -> Outcome:
    """Confirm (nabla_X J)X = 0 and (nabla_X J)Y = G(X, Y) on the frame."""
    differences = []
    for (i, j) in itertools.product(FRAME, repeat=2):
        value = connection.nabla_J_frame(i, j)
        differences.append((value + connection.nabla_J_frame(j, i)).max_abs())
        differences.append((value - connection.frame_G(i, j)).max_abs())
    return (max(differences), None)


def check_frame_identities(cfg: results.SuiteConfig) -> Outcome:
    """Evaluate the nearly Kähler identities exactly on the frame at the identity."""
    fields = list(_identity_frame().values())
    pair_worst = max(
        max(_pair_residuals(X, Y)) for (X, Y) in itertools.product(fields, repeat=2)
    )
    skew_worst = max(
        _skew_residual(X, Y, Z) for (X, Y, Z) in itertools.product(fields, repeat=3)
    )
    return (max(pair_worst, skew_worst), {"pairs": str(len(fields) ** 2)})


def check_sampled_identities(cfg: results.SuiteConfig) -> Outcome:
    """Evaluate the nearly Kähler identities on seeded random configurations."""
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        (X, Y, Z) = manifold.random_tangents(rng, 3)
        worst = max(worst, *_pair_residuals(X, Y), _skew_residual(X, Y, Z))
    return (worst, {"samples": str(cfg.samples), "seed": str(cfg.seed)})


def check_curvature_frame(cfg: results.SuiteConfig) -> Outcome:
    """Compare the closed-form curvature with the frame curvature on every ordered triple."""
    fields = _identity_frame()
    differences = [
        (
            manifold.curvature(fields[i], fields[j], fields[k]).coefficients()
            - connection.frame_curvature(i, j, k)
        ).max_abs()
        for (i, j, k) in itertools.product(FRAME, repeat=3)
    ]
    return (max(differences), {"triples": str(len(differences))})


def check_curvature_sampled(cfg: results.SuiteConfig) -> Outcome:
    """Compare the closed-form curvature with the curvature of invariant extensions."""
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        (U, V, W) = manifold.random_tangents(rng, 3)
        difference = manifold.curvature(U, V, W) - manifold.invariant_curvature(U, V, W)
        worst = max(worst, manifold.frame_norm(difference))
    return (worst, {"samples": str(cfg.samples)})


@lru_cache(maxsize=None)
def nabla_g_table() -> np.ndarray:
    """Return the frame values of (nabla_i G)(j, k) as a float array of shape (6, 6, 6, 6)."""
    table = np.zeros((6, 6, 6, 6))
    for (a, i) in enumerate(FRAME):
        for (b, j) in enumerate(FRAME):
            for (c, k) in enumerate(FRAME):
                values = connection.frame_nabla_G(i, j, k).values
                table[a, b, c] = [float(x) for x in values]
    return table


def _coefficient_array(X: Tangent) -> np.ndarray:
    return np.array([float(x) for x in X.coefficients().values])


def check_nabla_g_frame(cfg: results.SuiteConfig) -> Outcome:
    """Compare the closed form of nabla G with the frame Leibniz rule on every triple."""
    fields = _identity_frame()
    differences = [
        (
            manifold.nabla_G(fields[i], fields[j], fields[k]).coefficients()
            - connection.frame_nabla_G(i, j, k)
        ).max_abs()
        for (i, j, k) in itertools.product(FRAME, repeat=3)
    ]
    return (max(differences), None)


def check_tensor_closed_forms(cfg: results.SuiteConfig) -> Outcome:
    """Compare nabla G, g(G, G) and G(X, G(Z, W)) with direct evaluation on samples."""
    rng = np.random.default_rng(cfg.seed)
    table = nabla_g_table()
    worst = {"nabla G": 0.0, "g(G, G)": 0.0, "G(G)": 0.0}
    for _ in range(cfg.samples):
        (X, Y, Z, W) = manifold.random_tangents(rng, 4)
        direct = np.einsum(
            "i,j,k,ijkm->m",
            _coefficient_array(X),
            _coefficient_array(Y),
            _coefficient_array(Z),
            table,
        )
        closed = _coefficient_array(manifold.nabla_G(X, Y, Z))
        worst["nabla G"] = max(worst["nabla G"], float(np.max(np.abs(direct - closed))))
        pairing = manifold.nk_metric(manifold.tensor_G(X, Y), manifold.tensor_G(Z, W))
        worst["g(G, G)"] = max(
            worst["g(G, G)"], field.magnitude(pairing - manifold.g_GG(X, Y, Z, W))
        )
        nested = manifold.tensor_G(X, manifold.tensor_G(Z, W))
        worst["G(G)"] = max(
            worst["G(G)"], manifold.frame_norm(nested - manifold.G_of_G(X, Z, W))
        )
    witness = {name: util.format_residual(value) for (name, value) in worst.items()}
    return (max(worst.values()), witness)


def check_flow_oracle(cfg: results.SuiteConfig) -> Outcome:
    """Recover the connection from flat derivatives along one-parameter subgroups."""
    rng = np.random.default_rng(cfg.seed)
    point = manifold.random_point(rng)
    differences = [
        (
            connection.flow_connection(i, j, point, cfg.step)
            - connection.koszul_connection(i, j)
        ).max_abs()
        for (i, j) in itertools.product(FRAME, repeat=2)
    ]
    return (max(differences), {"step": util.format_tolerance(cfg.step)})


STRUCTURE_CHECKS: List[RegisteredCheck] = [
    RegisteredCheck("levi-civita-table", RecordKind.EXACT, check_levi_civita_table),
    RegisteredCheck("nabla-J-table", RecordKind.EXACT, check_nabla_j_table),
    RegisteredCheck("metric-table", RecordKind.EXACT, check_metric_table),
    RegisteredCheck("torsion-free", RecordKind.EXACT, check_torsion_free),
    RegisteredCheck("metric-compatibility", RecordKind.EXACT, check_metric_compatibility),
    RegisteredCheck("nearly-kaehler", RecordKind.EXACT, check_nearly_kaehler),
    RegisteredCheck("frame-identities", RecordKind.EXACT, check_frame_identities),
    RegisteredCheck(
        "sampled-identities", RecordKind.NUMERIC, check_sampled_identities, sampled_rule
    ),
    RegisteredCheck("curvature-frame", RecordKind.EXACT, check_curvature_frame),
    RegisteredCheck(
        "curvature-sampled", RecordKind.NUMERIC, check_curvature_sampled, sampled_rule
    ),
    RegisteredCheck("nabla-G-frame", RecordKind.EXACT, check_nabla_g_frame),
    RegisteredCheck(
        "tensor-closed-forms", RecordKind.NUMERIC, check_tensor_closed_forms, sampled_rule
    ),
    RegisteredCheck(
        "flow-oracle", RecordKind.NUMERIC, check_flow_oracle, second_order_rule
    ),
    RegisteredCheck("bracket-ledger", RecordKind.INFORMATIONAL, check_bracket_ledger),
    RegisteredCheck("J-table-ledger", RecordKind.INFORMATIONAL, check_j_ledger),
    RegisteredCheck("nabla-J-ledger", RecordKind.INFORMATIONAL, check_nabla_j_ledger),
]


# ---
# End region: Structure suite }}}
# ---

# ---
# Region: Surface suite {{{
# ---


def surface_grid(f: Immersion, cfg: results.SuiteConfig) -> List[Point]:
    """Return the sample grid of an immersion."""
    radius = (
        f.expected.grid_radius
        if f.expected is not None
        else constants.defaults.Flat_Grid_Radius
    )
    points = surface.grid_points(radius, cfg.grid)
    surface.check_domain(f, points)
    return points


def _grid_maximum(
    points: Sequence[Point], measure: Callable[[float, float], float]
) -> Tuple[float, Witness]:
    (worst, where) = (0.0, points[0])
    for (s, t) in points:
        amount = measure(s, t)
        # a nan residual is kept so that the record fails
        if math.isnan(amount) or amount > worst:
            (worst, where) = (amount, (s, t))
            if math.isnan(amount):
                break
    return (worst, {"at": f"({where[0]:.6g}, {where[1]:.6g})"})


def _render_curvature(value: float) -> str:
    return str(Fraction(value).limit_denominator(1000))


def _moved(f: Immersion, cfg: results.SuiteConfig) -> Immersion:
    rng = np.random.default_rng(cfg.seed)
    left = manifold.random_point(rng)
    right = sl2.sl2_exp(manifold.random_trace_zero(rng)).matrix
    return immersions.isometric_image(f, left.A.matrix, left.B.matrix, right)


def _basis_open_question(cfg: results.SuiteConfig) -> Outcome:
    """Settle which matrix completes the basis behind the positive flat example."""
    e1 = TraceZero.basis(1)
    first = e1.to_mat2()
    offdiagonal = TraceZero.basis(2).to_mat2()
    # the generator has coefficient sqrt(3/2) along diag(1, -1)
    length = Fraction(3, 2) * sl2.minkowski_inner(first, first)

    def gram_det(x: Mat2, y: Mat2) -> field.Number:
        return sl2.minkowski_inner(x, x) * sl2.minkowski_inner(
            y, y
        ) - sl2.minkowski_inner(x, y) * sl2.minkowski_inner(x, y)

    return (
        0,
        {
            "<alpha, alpha>": field.render(length),
            "gram det with diag(1,-1) twice": field.render(gram_det(first, first)),
            "gram det with offdiag(1,1)": field.render(gram_det(first, offdiagonal)),
            "second basis element": str(offdiagonal),
        },
    )


def surface_checks(f: Immersion) -> List[RegisteredCheck]:
    """Return the checks that apply to a registered immersion, in report order."""
    expected = f.expected
    cache: Dict[str, surface.EpsilonReport] = {}

    def points(cfg: results.SuiteConfig) -> List[Point]:
        return surface_grid(f, cfg)

    def membership(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(points(cfg), lambda s, t: surface.membership_residual(f, s, t))

    def almost_complex(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(
            points(cfg), lambda s, t: surface.almost_complex_residual(f, s, t, cfg.step)
        )

    def tangency(cfg: results.SuiteConfig) -> Outcome:
        found = [
            surface.p_tangency(f, s, t, cfg.step, cfg.tolerance) for (s, t) in points(cfg)
        ]
        target = expected.tangency if expected is not None else None
        mismatches = sum(1 for c in found if c != target)
        witness = {"found": ", ".join(sorted({c.value for c in found}))}
        if target is not None:
            witness["expected"] = target.value
        return (mismatches, witness)

    def eigenvector_pattern(cfg: results.SuiteConfig) -> Outcome:
        # Pv = v and PJv = -Jv mean that P acts on the plane with eigenvalues 1, -1
        def defect(s: float, t: float) -> float:
            action = surface.p_action(surface.jet(f, s, t, cfg.step))
            eigenvalues = np.sort(np.linalg.eigvals(action).real)
            return float(np.max(np.abs(eigenvalues - np.array([-1.0, 1.0]))))

        return _grid_maximum(points(cfg), defect)

    def signature(cfg: results.SuiteConfig) -> Outcome:
        found = [
            surface.induced_metric(f, s, t, cfg.step).signature() for (s, t) in points(cfg)
        ]
        target = expected.signature if expected is not None else None
        mismatches = sum(1 for c in found if c != target)
        witness = {"found": ", ".join(sorted({c.value for c in found}))}
        if target is not None:
            witness["expected"] = target.value
        return (mismatches, witness)

    def second_fundamental_form(cfg: results.SuiteConfig) -> Outcome:
        components = np.zeros(3)
        for (s, t) in points(cfg):
            norms = surface.sff_norms(surface.second_fundamental_form(f, s, t, cfg.step))
            components = np.maximum(components, np.array(norms))
        witness = {
            name: util.format_residual(float(value))
            for (name, value) in zip(("h_ss", "h_st", "h_tt"), components)
        }
        return (float(np.max(components)), witness)

    def gauss_curvature(cfg: results.SuiteConfig) -> Outcome:
        target = expected.gauss_curvature if expected is not None else 0.0
        (worst, witness) = _grid_maximum(
            points(cfg),
            lambda s, t: abs(
                surface.gauss_curvature(f, s, t, jet_step=cfg.step) - target
            ),
        )
        witness = dict(witness or {})
        witness["expected"] = _render_curvature(target)
        witness["K(0, 0)"] = f"{surface.gauss_curvature(f, 0.0, 0.0, jet_step=cfg.step):.9g}"
        return (worst, witness)

    def integrability(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(
            points(cfg), lambda s, t: max(surface.integrability_residual(f, s, t, cfg.step))
        )

    def rotated_integrability(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(
            points(cfg),
            lambda s, t: max(surface.rotated_integrability_residual(f, s, t, cfg.step)),
        )

    def metric_pictures(cfg: results.SuiteConfig) -> Outcome:
        def defect(s: float, t: float) -> float:
            surface_jet = surface.jet(f, s, t, cfg.step)
            (Fs, Ft) = (surface_jet.Fs, surface_jet.Ft)
            return max(
                field.magnitude(manifold.product_from_g_residual(X, Y))
                for (X, Y) in ((Fs, Fs), (Fs, Ft), (Ft, Ft))
            )

        return _grid_maximum(points(cfg), defect)

    def flat_second_derivatives(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(
            points(cfg),
            lambda s, t: surface.flat_second_derivative_residual(f, s, t, cfg.step),
        )

    def product_pairings(cfg: results.SuiteConfig) -> Outcome:
        def defect(s: float, t: float) -> float:
            surface_jet = surface.jet(f, s, t, cfg.step)
            conversion = field.magnitude(
                manifold.product_from_q_residual(surface_jet.Fs, surface_jet.Ft)
            )
            return max(surface.product_pairing_residual(f, s, t, cfg.step), conversion)

        return _grid_maximum(points(cfg), defect)

    def p_normal_frame(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(
            points(cfg),
            lambda s, t: surface.p_normal_frame_residual(surface.jet(f, s, t, cfg.step)),
        )

    def isometry_gauge(cfg: results.SuiteConfig) -> Outcome:
        moved = _moved(f, cfg)

        def defect(s: float, t: float) -> float:
            before = surface.induced_metric(f, s, t, cfg.step)
            after = surface.induced_metric(moved, s, t, cfg.step)
            gap = max(
                abs(before.g11 - after.g11),
                abs(before.g12 - after.g12),
                abs(before.g22 - after.g22),
            ) / before.scale()
            return max(gap, surface.almost_complex_residual(moved, s, t, cfg.step))

        return _grid_maximum(points(cfg), defect)

    def analytic_derivatives(cfg: results.SuiteConfig) -> Outcome:
        return _grid_maximum(points(cfg), lambda s, t: surface.jet_gap(f, s, t, cfg.step))

    def jet_convergence(cfg: results.SuiteConfig) -> Outcome:
        step = constants.tolerances.Convergence_Step
        coarse = surface.jet_gap(f, 0.0, 0.0, step)
        fine = surface.jet_gap(f, 0.0, 0.0, step / 2)
        ratio = math.inf if fine == 0 else coarse / fine
        shortfall = max(0.0, constants.tolerances.Convergence_Ratio - ratio)
        return (shortfall, {"ratio": f"{ratio:.3g}"})

    def epsilon_report(cfg: results.SuiteConfig) -> surface.EpsilonReport:
        key = f"{cfg.grid}:{cfg.step}"
        if key not in cache:
            cache[key] = surface.epsilon_surface_check(f, points(cfg), cfg.step)
        return cache[key]

    def epsilon_quadric(cfg: results.SuiteConfig) -> Outcome:
        report = epsilon_report(cfg)
        return (report.quadric, {"epsilon(0, 0)": str(report.origin)})

    def epsilon_derivatives(cfg: results.SuiteConfig) -> Outcome:
        return (epsilon_report(cfg).derivatives, None)

    def epsilon_equations(cfg: results.SuiteConfig) -> Outcome:
        return (epsilon_report(cfg).equations, None)

    def epsilon_umbilic(cfg: results.SuiteConfig) -> Outcome:
        report = epsilon_report(cfg)
        witness = {
            "mixed": util.format_residual(report.mixed_form),
            "umbilic": util.format_residual(report.umbilic),
            "shape operator": util.format_residual(report.shape_operator),
        }
        return (max(report.mixed_form, report.umbilic, report.shape_operator), witness)

    def printed_log_derivatives(cfg: results.SuiteConfig) -> Outcome:
        def defect(s: float, t: float) -> float:
            (printed, derived) = (immersions.printed_hyperbolic_logs(s, t), f.logs(s, t))
            pairs = (
                (printed.a_s, derived.a_s),
                (printed.a_t, derived.a_t),
                (printed.b_s, derived.b_s),
                (printed.b_t, derived.b_t),
            )
            return max(
                abs(float(x) - float(y))
                for (left, right) in pairs
                for (x, y) in zip(left, right)
            )

        return _grid_maximum(points(cfg), defect)

    def chart_agreement(cfg: results.SuiteConfig) -> Outcome:
        other = immersions.lookup("hyperbolic-quadric")
        return (
            surface.chart_agreement(f, other, points(cfg)),
            {"points": str(len(points(cfg)))},
        )

    checks = [
        RegisteredCheck("sl2-membership", RecordKind.NUMERIC, membership, membership_rule),
        RegisteredCheck("almost-complex", RecordKind.NUMERIC, almost_complex, algebraic_rule),
        RegisteredCheck("p-tangency", RecordKind.EXACT, tangency),
        RegisteredCheck("metric-signature", RecordKind.EXACT, signature),
        RegisteredCheck("metric-pictures", RecordKind.NUMERIC, metric_pictures, membership_rule),
    ]
    if expected is not None and expected.totally_geodesic:
        checks.append(
            RegisteredCheck(
                "second-fundamental-form",
                RecordKind.NUMERIC,
                second_fundamental_form,
                second_order_rule,
            )
        )
    else:
        checks.append(
            RegisteredCheck(
                "second-fundamental-form", RecordKind.INFORMATIONAL, second_fundamental_form
            )
        )
    checks += [
        RegisteredCheck("gauss-curvature", RecordKind.NUMERIC, gauss_curvature, curvature_rule),
        RegisteredCheck("integrability", RecordKind.NUMERIC, integrability, second_order_rule),
        RegisteredCheck(
            "integrability-rotated",
            RecordKind.NUMERIC,
            rotated_integrability,
            second_order_rule,
        ),
        RegisteredCheck("isometry-gauge", RecordKind.NUMERIC, isometry_gauge, algebraic_rule),
    ]
    if f.log_derivatives is not None:
        checks += [
            RegisteredCheck(
                "analytic-derivatives", RecordKind.NUMERIC, analytic_derivatives, algebraic_rule
            ),
            RegisteredCheck(
                "jet-convergence", RecordKind.NUMERIC, jet_convergence, convergence_rule
            ),
        ]
    if expected is not None and expected.tangency == enumerations.PTangency.P_TANGENT:
        checks.append(
            RegisteredCheck(
                "p-eigenvector-pattern",
                RecordKind.NUMERIC,
                eigenvector_pattern,
                algebraic_rule,
            )
        )
    if expected is not None and expected.tangency == enumerations.PTangency.P_NORMAL:
        checks.append(
            RegisteredCheck("p-normal-frame", RecordKind.NUMERIC, p_normal_frame, algebraic_rule)
        )
    if f.flat_sign != 0:
        checks += [
            RegisteredCheck(
                "flat-second-derivatives",
                RecordKind.NUMERIC,
                flat_second_derivatives,
                second_order_rule,
            ),
            RegisteredCheck(
                "product-pairings", RecordKind.NUMERIC, product_pairings, algebraic_rule
            ),
        ]
    if f.flat_sign > 0:
        checks.append(
            RegisteredCheck(
                "basis-open-question", RecordKind.INFORMATIONAL, _basis_open_question
            )
        )
    if "epsilon" in f.tags:
        checks += [
            RegisteredCheck(
                "printed-log-derivatives",
                RecordKind.NUMERIC,
                printed_log_derivatives,
                algebraic_rule,
            ),
            RegisteredCheck("epsilon-quadric", RecordKind.NUMERIC, epsilon_quadric, membership_rule),
            RegisteredCheck(
                "epsilon-derivatives", RecordKind.NUMERIC, epsilon_derivatives, algebraic_rule
            ),
            RegisteredCheck(
                "epsilon-structure-equations",
                RecordKind.NUMERIC,
                epsilon_equations,
                second_order_rule,
            ),
            RegisteredCheck(
                "epsilon-umbilic", RecordKind.NUMERIC, epsilon_umbilic, second_order_rule
            ),
            RegisteredCheck("chart-agreement", RecordKind.NUMERIC, chart_agreement, membership_rule),
        ]
    return checks


# ---
# End region: Surface suite }}}
# ---

# ---
# Region: Frame case suite {{{
# ---


def check_g_table_consistency(cfg: results.SuiteConfig) -> Outcome:
    """Check antisymmetry, skew symmetry and the composition rule of the G table."""
    failures = frame.g_table_consistency()
    witness = {"failures": ", ".join(failures[:5])} if failures else None
    return (len(failures), witness)


def check_g_table_ledger(cfg: results.SuiteConfig) -> Outcome:
    """List the printed G table entries that disagree with the derived table."""
    return (0, _ledger(frame.g_table_discrepancies()))


def check_realized_frame(cfg: results.SuiteConfig) -> Outcome:
    """Rebuild the adapted frame from an exact unit vector and compare every table."""
    realized = frame.realize_adapted_frame(frame.hyperbolic_unit_vector())
    failures = frame.realized_discrepancies(realized)
    witness = {"failures": ", ".join(failures[:5])} if failures else {"v": str(realized[1].coefficients())}
    return (len(failures), witness)


def check_connection_compatibility(cfg: results.SuiteConfig) -> Outcome:
    """Confirm that the adapted connection table is metric as a polynomial identity."""
    failures = frame.metric_compatibility()
    witness = {"failures": ", ".join(failures[:5])} if failures else None
    return (len(failures), witness)


def check_curvature_defect(cfg: results.SuiteConfig) -> Outcome:
    """Match the curvature defect of the adapted frame with the first curvature equation."""
    defect = frame.frame_curvature_defect(1)[1]
    constrained = defect.subs(
        frame.a3,
        sympy.sqrt(sympy.Rational(7, 12) - frame.a2**2),
    )
    (first, _, _) = frame.curvature_consistency_symbolic()
    difference = sympy.simplify(sympy.expand(constrained + first / 3))
    return (0 if difference == 0 else 1, {"difference": str(difference)})


def check_gauss_constraint(cfg: results.SuiteConfig) -> Outcome:
    """Evaluate the value of a2^2 + a3^2 forced by the curvature -5/9."""
    value = frame.gauss_constraint(certificate.TARGET_CURVATURE)
    return (value - Fraction(7, 12), {"value": str(value)})


def check_curvature_dichotomy(cfg: results.SuiteConfig) -> Outcome:
    """Confirm that -4/3 and -5/9 are the only possible constant curvatures."""
    roots = frame.curvature_dichotomy()
    expected = [sympy.Rational(-4, 3), sympy.Rational(-5, 9)]
    constraints = [
        frame.gauss_constraint(Fraction(int(r.p), int(r.q))) for r in roots
    ]
    return (
        0 if roots == expected else 1,
        {
            "roots": ", ".join(str(r) for r in roots),
            "constraints": ", ".join(str(c) for c in constraints),
        },
    )


def check_solution_set(cfg: results.SuiteConfig) -> Outcome:
    """Solve the parallel system exactly and check every solution by substitution."""
    solutions = certificate.parallel_system_solutions()
    residual = max(
        (field.magnitude(x) for pair in solutions.residuals for x in pair), default=0.0
    )
    witness = {
        "count": str(len(solutions.solutions)),
        "solutions": ", ".join(
            certificate.render_solution(s) for s in solutions.solutions
        ),
    }
    return (0 if solutions.exact else residual, witness)


def check_resultant_agreement(cfg: results.SuiteConfig) -> Outcome:
    """Compare the factored solutions with the resultant elimination."""
    factored = certificate.factored_solutions()
    eliminated = certificate.resultant_solutions()
    return (
        0 if factored == eliminated else 1,
        {"resultant": ", ".join(certificate.render_solution(s) for s in eliminated)},
    )


def check_float_solutions(cfg: results.SuiteConfig) -> Outcome:
    """Compare the exact solutions with a floating point polynomial solver."""
    gap = certificate.float_gap(
        certificate.factored_solutions(), certificate.float_solutions()
    )
    return (gap, None)


def check_unique_null_ledger(cfg: results.SuiteConfig) -> Outcome:
    """Record that the parallel system has more than the null solution."""
    result = certificate.nonexistence_certificate()
    return (
        0,
        {
            "claimed": "unique null solution",
            "derived": ", ".join(
                certificate.render_solution(s) for s in result.solutions.solutions
            ),
            "unique": util.get_human_readable_boolean(result.unique_null_solution),
        },
    )


def check_branches(cfg: results.SuiteConfig) -> Outcome:
    """Record what the derivative conditions force on a1 for each solution."""
    result = certificate.nonexistence_certificate()
    return (
        0,
        {
            certificate.render_solution(s): branch
            for (s, branch) in zip(result.solutions.solutions, result.branches)
        },
    )


def check_disjointness(cfg: results.SuiteConfig) -> Outcome:
    """Decide exactly that no solution attains a2^2 + a3^2 = 7/12."""
    result = certificate.nonexistence_certificate()
    return (
        0 if result.disjoint else 1,
        {
            "values": "{" + ", ".join(field.render(v) for v in result.norms) + "}",
            "constraint": str(result.constraint),
            "verdict": result.verdict,
        },
    )


def check_signature_note(cfg: results.SuiteConfig) -> Outcome:
    """Record the signature argument for the case g(v, v) = -1."""
    return (0, {"argument": frame.p_normal_signature_note()})


FRAME_CASE_CHECKS: List[RegisteredCheck] = [
    RegisteredCheck("g-table-consistency", RecordKind.EXACT, check_g_table_consistency),
    RegisteredCheck("realized-frame", RecordKind.EXACT, check_realized_frame),
    RegisteredCheck(
        "connection-metric-compatibility", RecordKind.EXACT, check_connection_compatibility
    ),
    RegisteredCheck("curvature-defect", RecordKind.EXACT, check_curvature_defect),
    RegisteredCheck("gauss-constraint", RecordKind.EXACT, check_gauss_constraint),
    RegisteredCheck("curvature-dichotomy", RecordKind.EXACT, check_curvature_dichotomy),
    RegisteredCheck("solution-set", RecordKind.EXACT, check_solution_set),
    RegisteredCheck("resultant-agreement", RecordKind.EXACT, check_resultant_agreement),
    RegisteredCheck("float-solutions", RecordKind.NUMERIC, check_float_solutions, sampled_rule),
    RegisteredCheck("disjointness-verdict", RecordKind.EXACT, check_disjointness),
    RegisteredCheck("derivative-branches", RecordKind.INFORMATIONAL, check_branches),
    RegisteredCheck("g-table-ledger", RecordKind.INFORMATIONAL, check_g_table_ledger),
    RegisteredCheck(
        "unique-null-solution-ledger", RecordKind.INFORMATIONAL, check_unique_null_ledger
    ),
    RegisteredCheck("p-normal-signature", RecordKind.INFORMATIONAL, check_signature_note),
]


# ---
# End region: Frame case suite }}}
# ---

# ---
# Region: Suite commands {{{
# ---


def _timed(
    suite: str, cfg: results.SuiteConfig, collect: Callable[[], List[results.CheckRecord]]
) -> results.VerificationReport:
    start = time.perf_counter()
    records = collect()
    elapsed = int(round((time.perf_counter() - start) * 1000))
    report = results.VerificationReport.assemble(suite, cfg, records, elapsed)
    logger.debug(f"Suite {suite} finished with {len(report.failures())} failures")
    return report


def cmd_structure(cfg: results.SuiteConfig) -> results.VerificationReport:
    """Verify the tables, identities and curvature of the nearly Kähler structure."""
    return _timed(
        constants.suites.Structure, cfg, lambda: run_checks(STRUCTURE_CHECKS, cfg)
    )


def cmd_surface(name: str, cfg: results.SuiteConfig) -> results.VerificationReport:
    """Verify the geometry of a registered immersion.

    An unknown name raises a KeyError that lists the registry.
    """
    f = immersions.lookup(name)
    return _timed(
        constants.suites.Surface_Prefix + name,
        cfg,
        lambda: run_checks(surface_checks(f), cfg),
    )


def cmd_frame_case(cfg: results.SuiteConfig) -> results.VerificationReport:
    """Verify the adapted frame tables and the nonexistence certificate."""
    return _timed(
        constants.suites.Frame_Case, cfg, lambda: run_checks(FRAME_CASE_CHECKS, cfg)
    )


def _prefixed(
    report: results.VerificationReport,
) -> List[results.CheckRecord]:
    prefix = report.suite + constants.nkverify.Separator
    return [
        check.model_copy(update={"name": prefix + check.name})
        for check in report.checks
    ]


def cmd_report_all(cfg: results.SuiteConfig) -> results.VerificationReport:
    """Run every suite and concatenate the records in a fixed order."""

    def collect() -> List[results.CheckRecord]:
        reports = [cmd_structure(cfg)]
        reports += [cmd_surface(name, cfg) for name in cfg.surfaces]
        reports.append(cmd_frame_case(cfg))
        return [check for report in reports for check in _prefixed(report)]

    return _timed(constants.suites.All, cfg, collect)


# ---
# End region: Suite commands }}}
# ---
