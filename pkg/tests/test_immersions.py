"""Pytest test suite for the immersions module."""

import math

import pytest
from hypothesis import given, strategies

from nkverify import enumerations, immersions, sl2
from nkverify.sl2 import Mat2, TraceZero

disk = strategies.floats(min_value=-0.6, max_value=0.6, allow_nan=False)
square = strategies.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def test_registry_order_and_lookup():
    """Confirm the registered names and that lookup builds each immersion."""
    assert immersions.registry_names() == [
        "flat-positive",
        "flat-negative",
        "hyperbolic-st",
        "hyperbolic-quadric",
    ]
    for name in immersions.registry_names():
        f = immersions.lookup(name)
        assert f.name == name
        assert f.expected is not None


def test_lookup_unknown_name():
    """Confirm that an unknown name raises an error that lists the registry."""
    with pytest.raises(KeyError) as error:
        immersions.lookup("sphere")
    assert "flat-positive" in str(error.value)


def test_hyperbolic_domain_excludes_annulus():
    """Confirm that the chart refuses points near the unit circle."""
    f = immersions.example_hyperbolic()
    assert f.contains(0.0, 0.0)
    assert not f.contains(1.0, 0.0)
    with pytest.raises(immersions.DomainError):
        f(0.0, 1.0)
    with pytest.raises(immersions.DomainError):
        f.logs(1.0, 0.0)


def test_logs_missing_for_quadric_chart():
    """Confirm that the quadric chart has no analytic derivatives."""
    with pytest.raises(ValueError):
        immersions.example_hyperbolic_quadric().logs(0.0, 0.0)


@pytest.mark.parametrize(
    "name,tangency,signature,curvature",
    [
        (
            "flat-positive",
            enumerations.PTangency.P_TANGENT,
            enumerations.MetricSignature.POSITIVE_DEFINITE,
            0.0,
        ),
        (
            "flat-negative",
            enumerations.PTangency.P_TANGENT,
            enumerations.MetricSignature.NEGATIVE_DEFINITE,
            0.0,
        ),
        (
            "hyperbolic-st",
            enumerations.PTangency.P_NORMAL,
            enumerations.MetricSignature.POSITIVE_DEFINITE,
            -4.0 / 3.0,
        ),
    ],
)
def test_expectations(name, tangency, signature, curvature):
    """Confirm the recorded expectations of the classified examples."""
    expected = immersions.lookup(name).expected
    assert expected.tangency == tangency
    assert expected.signature == signature
    assert expected.gauss_curvature == pytest.approx(curvature)


def test_epsilon_at_origin():
    """Confirm that the hyperboloid chart starts at -sqrt(3)/2 e3."""
    position = immersions.epsilon(0.0, 0.0)
    expected = (0.0, 0.0, -math.sqrt(3.0) / 2.0)
    assert tuple(position.to_float()) == pytest.approx(expected)


@given(s=disk, t=disk)
@pytest.mark.fuzz
def test_epsilon_lies_on_hyperboloid(s, t):
    """Use Hypothesis to confirm that <epsilon, epsilon> = -3/4 inside the disk."""
    position = immersions.epsilon(s, t)
    assert position.inner(position) == pytest.approx(-0.75, abs=1e-9)


@given(s=disk, t=disk)
@pytest.mark.fuzz
def test_charts_agree(s, t):
    """Use Hypothesis to confirm that the two charts give the same points."""
    direct = immersions.example_hyperbolic()(s, t)
    through_quadric = immersions.example_hyperbolic_quadric()(s, t)
    for (x, y) in zip(direct.position(), through_quadric.position()):
        assert x.entries() == pytest.approx(y.entries(), abs=1e-9)


@pytest.mark.parametrize("point", [(0.0, 0.0), (0.5, 0.0), (0.2, -0.3), (1.5, 0.4)])
def test_printed_logs_agree_with_derived(point):
    """Confirm the printed log derivative matrices against the derived ones."""
    (s, t) = point
    printed = immersions.printed_hyperbolic_logs(s, t)
    derived = immersions.example_hyperbolic().logs(s, t)
    for name in ("a_s", "a_t", "b_s", "b_t"):
        left = tuple(getattr(printed, name).to_float())
        right = tuple(getattr(derived, name).to_float())
        assert left == pytest.approx(right, abs=1e-9)


def test_quadric_point_rejects_points_off_the_quadric():
    """Confirm that a point off the quadric is refused."""
    with pytest.raises(immersions.DomainError):
        immersions.quadric_point((1.0, 1.0, 1.0))


@given(s=square, t=square)
@pytest.mark.fuzz
def test_flat_examples_lie_in_the_group(s, t):
    """Use Hypothesis to confirm that the flat examples stay in SL(2,R)."""
    for f in (immersions.example_flat_positive(), immersions.example_flat_negative()):
        point = f(s, t)
        assert point.A.membership_residual() <= 1e-10  # noqa: PLR2004
        assert point.B.membership_residual() <= 1e-10  # noqa: PLR2004


def test_isometric_image_keeps_metadata():
    """Confirm that a moved immersion keeps the geometry it is expected to have."""
    rotation = sl2.sl2_exp(TraceZero(0.0, 0.0, 0.4)).matrix
    boost = sl2.sl2_exp(TraceZero(0.3, 0.1, 0.0)).matrix
    f = immersions.example_hyperbolic()
    moved = immersions.isometric_image(f, rotation, boost, Mat2.identity())
    assert moved.name == "hyperbolic-st-moved"
    assert moved.expected == f.expected
    assert moved.tags == f.tags
    point = moved(0.2, 0.1)
    assert point.A.membership_residual() <= 1e-10  # noqa: PLR2004
    # left translations do not change the log derivatives
    assert tuple(moved.logs(0.2, 0.1).a_s.to_float()) == pytest.approx(
        tuple(f.logs(0.2, 0.1).a_s.to_float())
    )


def test_constant_and_test_immersions():
    """Confirm the unregistered immersions used by the diagnostics."""
    assert immersions.example_constant()(0.3, 0.4) == immersions.example_constant()(
        0.0, 0.0
    )
    diagonal = immersions.example_diagonal()(0.2, 0.3)
    assert diagonal.A == diagonal.B
    assert tuple(immersions.example_geodesic_product().logs(0.0, 0.0).b_t) == (
        0.0,
        1.0,
        0.0,
    )
