"""Pytest test suite for the surface module."""

import math

import numpy as np
import pytest

from nkverify import immersions, surface
from nkverify.enumerations import MetricSignature, PTangency
from nkverify.surface import InducedMetric

FLAT_POSITIVE = immersions.example_flat_positive()
FLAT_NEGATIVE = immersions.example_flat_negative()
HYPERBOLIC = immersions.example_hyperbolic()
QUADRIC = immersions.example_hyperbolic_quadric()


def test_grid_points():
    """Confirm the size, the corners and the degenerate cases of the sample grid."""
    points = surface.grid_points(1.0, 3)
    assert len(points) == 9  # noqa: PLR2004
    assert (-1.0, -1.0) in points
    assert (0.0, 0.0) in points
    assert surface.grid_points(0.5, 1) == [(0.0, 0.0)]
    with pytest.raises(ValueError):
        surface.grid_points(1.0, 0)


def test_check_domain():
    """Confirm that a sample outside of the domain is refused."""
    surface.check_domain(HYPERBOLIC, [(0.0, 0.0), (0.3, 0.3)])
    with pytest.raises(immersions.DomainError):
        surface.check_domain(HYPERBOLIC, [(0.0, 0.0), (1.0, 0.0)])


@pytest.mark.parametrize(
    "f,signature",
    [
        (FLAT_POSITIVE, MetricSignature.POSITIVE_DEFINITE),
        (FLAT_NEGATIVE, MetricSignature.NEGATIVE_DEFINITE),
        (HYPERBOLIC, MetricSignature.POSITIVE_DEFINITE),
        (QUADRIC, MetricSignature.POSITIVE_DEFINITE),
    ],
)
def test_signature_and_almost_complex(f, signature):
    """Confirm the signature of the induced metric and that F_t = J F_s."""
    (s, t) = (0.2, -0.1)
    metric = surface.induced_metric(f, s, t)
    assert metric.signature() == signature
    assert metric.is_conformal(1e-6)
    assert surface.almost_complex_residual(f, s, t) <= 1e-6  # noqa: PLR2004


def test_flat_metric_values():
    """Confirm that the positive flat surface has induced metric diag(1, 1)."""
    metric = surface.induced_metric(FLAT_POSITIVE, 0.4, 0.3)
    assert (metric.g11, metric.g12, metric.g22) == pytest.approx(
        (1.0, 0.0, 1.0), abs=1e-12
    )


@pytest.mark.parametrize(
    "f,tangency",
    [
        (FLAT_POSITIVE, PTangency.P_TANGENT),
        (FLAT_NEGATIVE, PTangency.P_TANGENT),
        (HYPERBOLIC, PTangency.P_NORMAL),
        (immersions.example_geodesic_product(), PTangency.MIXED),
    ],
)
def test_p_tangency(f, tangency):
    """Confirm the classification of the tangent planes by P."""
    assert surface.p_tangency(f, 0.1, 0.2) == tangency


def test_geodesic_product_is_not_almost_complex():
    """Confirm that the product of two geodesics fails F_t = J F_s."""
    f = immersions.example_geodesic_product()
    assert surface.almost_complex_residual(f, 0.0, 0.0) > 0.1  # noqa: PLR2004


def test_constant_map_is_degenerate():
    """Confirm that the constant map has a degenerate induced metric."""
    f = immersions.example_constant()
    metric = surface.induced_metric(f, 0.0, 0.0)
    assert metric.signature() == MetricSignature.DEGENERATE
    with pytest.raises(surface.DegenerateMetricError):
        metric.inverse()
    with pytest.raises(surface.DegenerateMetricError):
        surface.p_tangency(f, 0.0, 0.0)
    with pytest.raises(surface.DegenerateMetricError):
        surface.gauss_curvature(f, 0.0, 0.0)


def test_conformal_factor():
    """Confirm the conformal factor and its refusal for other metrics."""
    assert InducedMetric(4.0, 0.0, 4.0).conformal_factor == pytest.approx(math.log(2.0))
    with pytest.raises(surface.DegenerateMetricError):
        _ = InducedMetric(1.0, 0.5, 2.0).conformal_factor
    assert InducedMetric(1.0, 0.0, -1.0).signature() == MetricSignature.INDEFINITE


@pytest.mark.parametrize("point", [(0.0, 0.0), (0.5, -0.5)])
def test_flat_gauss_curvature(point):
    """Confirm that both flat examples have vanishing Gaussian curvature."""
    for f in (FLAT_POSITIVE, FLAT_NEGATIVE):
        assert surface.gauss_curvature(f, *point) == pytest.approx(0.0, abs=1e-4)


@pytest.mark.parametrize("f", [HYPERBOLIC, QUADRIC])
def test_hyperbolic_gauss_curvature(f):
    """Confirm that the P-normal surface has Gaussian curvature -4/3."""
    for point in [(0.0, 0.0), (0.2, 0.1), (-0.3, 0.25)]:
        assert surface.gauss_curvature(f, *point) == pytest.approx(-4.0 / 3.0, abs=1e-3)


def test_brioschi_agrees_on_conformal_metric():
    """Confirm that the Brioschi formula gives K = 0 for a constant metric."""
    zero = np.zeros(3)
    partials = {key: zero for key in ("s", "t", "ss", "st", "tt")}
    assert surface.brioschi(InducedMetric(1.0, 0.0, 1.0), partials) == 0.0


@pytest.mark.parametrize("f", [FLAT_POSITIVE, FLAT_NEGATIVE, HYPERBOLIC])
def test_totally_geodesic(f):
    """Confirm that the second fundamental form vanishes on the registered surfaces."""
    sff = surface.second_fundamental_form(f, 0.1, 0.2)
    assert max(surface.sff_norms(sff)) <= 1e-5  # noqa: PLR2004


@pytest.mark.parametrize("f", [FLAT_POSITIVE, FLAT_NEGATIVE, HYPERBOLIC])
def test_integrability(f):
    """Confirm both integrability conditions and their rotated form."""
    assert max(surface.integrability_residual(f, 0.1, -0.2)) <= 1e-5  # noqa: PLR2004
    rotated = surface.rotated_integrability_residual(f, 0.1, -0.2)
    assert max(rotated) <= 1e-5  # noqa: PLR2004


def test_jet_gap_is_small_for_analytic_examples():
    """Confirm that numeric first derivatives agree with analytic ones."""
    for f in (FLAT_POSITIVE, HYPERBOLIC):
        assert surface.jet_gap(f, 0.3, 0.2, 1e-3) <= 1e-6  # noqa: PLR2004


def test_jet_kinds():
    """Confirm that the jet is analytic exactly when derivatives are attached."""
    assert surface.jet(HYPERBOLIC, 0.0, 0.0).analytic
    assert not surface.jet(QUADRIC, 0.0, 0.0).analytic


@pytest.mark.parametrize("f", [FLAT_POSITIVE, HYPERBOLIC])
def test_numeric_jet_agrees_with_analytic_jet(f):
    """Confirm that the finite difference jet matches the jet built from analytic derivatives."""
    numeric = surface.numeric_jet(f, 0.2, -0.1)
    analytic = surface.analytic_jet(f, 0.2, -0.1)
    assert not numeric.analytic and analytic.analytic
    assert numeric.trace_defect <= 1e-6  # noqa: PLR2004
    for (x, y) in ((numeric.Fs, analytic.Fs), (numeric.Ft, analytic.Ft)):
        gap = x.coefficients() - y.coefficients()
        assert gap.max_abs() <= 1e-6  # noqa: PLR2004
    for name in ("Fss", "Fst", "Ftt"):
        for (x, y) in zip(getattr(numeric, name), getattr(analytic, name)):
            assert np.allclose(x.to_array(), y.to_array(), atol=1e-5)


def test_numeric_jet_needs_positive_step():
    """Confirm that a jet step must be positive."""
    with pytest.raises(ValueError):
        surface.numeric_jet(FLAT_POSITIVE, 0.0, 0.0, 0.0)


def test_flat_diagnostics():
    """Confirm the second derivatives and product pairings of the flat examples."""
    for f in (FLAT_POSITIVE, FLAT_NEGATIVE):
        assert surface.flat_second_derivative_residual(f, 0.2, 0.3) <= 1e-5  # noqa: PLR2004
        assert surface.product_pairing_residual(f, 0.2, 0.3) <= 1e-8  # noqa: PLR2004
    with pytest.raises(ValueError):
        surface.flat_second_derivative_residual(HYPERBOLIC, 0.0, 0.0)
    with pytest.raises(ValueError):
        surface.product_pairing_residual(HYPERBOLIC, 0.0, 0.0)


def test_p_normal_frame():
    """Confirm the Gram matrix of the frame built from a P-normal tangent vector."""
    surface_jet = surface.jet(HYPERBOLIC, 0.1, 0.1)
    assert surface.p_normal_frame_residual(surface_jet) <= 1e-8  # noqa: PLR2004


def test_p_action_on_flat_surface():
    """Confirm that P maps the tangent plane of a flat surface to itself."""
    surface_jet = surface.jet(FLAT_POSITIVE, 0.0, 0.0)
    action = surface.p_action(surface_jet)
    assert np.allclose(action @ action, np.eye(2), atol=1e-8)


def test_chart_agreement():
    """Confirm that both charts of the P-normal surface agree on a grid."""
    points = surface.grid_points(0.5, 3)
    assert surface.chart_agreement(HYPERBOLIC, QUADRIC, points) <= 1e-10  # noqa: PLR2004


def test_epsilon_surface_check():
    """Confirm the hyperboloid quadric, structure equations and umbilicity."""
    report = surface.epsilon_surface_check(HYPERBOLIC, surface.grid_points(0.5, 3))
    assert report.quadric <= 1e-10  # noqa: PLR2004
    assert report.derivatives <= 1e-8  # noqa: PLR2004
    assert report.equations <= 1e-5  # noqa: PLR2004
    assert report.mixed_form <= 1e-5  # noqa: PLR2004
    assert report.umbilic <= 1e-5  # noqa: PLR2004
    assert report.shape_operator <= 1e-5  # noqa: PLR2004
    assert tuple(report.origin.to_float()) == pytest.approx(
        (0.0, 0.0, -math.sqrt(3.0) / 2.0)
    )


def test_membership_residual():
    """Confirm that sampled points lie in SL(2,R) x SL(2,R)."""
    assert surface.membership_residual(HYPERBOLIC, 0.3, -0.2) <= 1e-10  # noqa: PLR2004
