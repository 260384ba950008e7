"""Pytest test suite for the manifold module."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies

from nkverify import manifold, sl2
from nkverify.manifold import (
    FRAME,
    FrameCoeffs,
    FrameIndex,
    NKPoint,
    Tangent,
    apply_J,
    apply_P,
    apply_Q,
    nk_metric,
    tensor_G,
)
from nkverify.sl2 import TraceZero

IDENTITY = NKPoint.identity()
small_integers = strategies.integers(min_value=-3, max_value=3)
trace_zeros = strategies.builds(TraceZero, small_integers, small_integers, small_integers)
tangents = strategies.builds(
    Tangent, strategies.just(IDENTITY), trace_zeros, trace_zeros
)
seeds = strategies.integers(min_value=0, max_value=2**32 - 1)


def frame(index: FrameIndex) -> Tangent:
    """Return a frame field at the identity."""
    return manifold.frame_field(index, IDENTITY)


@pytest.mark.parametrize(
    "i,j,expected",
    [
        (FrameIndex.E1, FrameIndex.E1, Fraction(2, 3)),
        (FrameIndex.E3, FrameIndex.E3, Fraction(-2, 3)),
        (FrameIndex.F2, FrameIndex.F2, Fraction(2, 3)),
        (FrameIndex.E1, FrameIndex.F1, Fraction(-1, 3)),
        (FrameIndex.E3, FrameIndex.F3, Fraction(1, 3)),
        (FrameIndex.E1, FrameIndex.E2, 0),
        (FrameIndex.E1, FrameIndex.F2, 0),
    ],
)
def test_metric_on_frame(i, j, expected):
    """Confirm the values of the nearly Kähler metric on the frame."""
    assert nk_metric(frame(i), frame(j)) == expected


@pytest.mark.parametrize("index", FRAME)
def test_structures_square_on_frame(index):
    """Confirm J^2 = -I, P^2 = I, Q^2 = I and PJ = -JP exactly on the frame."""
    X = frame(index)
    assert apply_J(apply_J(X)) == -X
    assert apply_P(apply_P(X)) == X
    assert apply_Q(apply_Q(X)) == X
    assert apply_P(apply_J(X)) == -apply_J(apply_P(X))


@given(X=tangents, Y=tangents)
@pytest.mark.fuzz
def test_fuzz_metric_compatibility(X, Y):
    """Use Hypothesis to confirm that J and P are isometries and g is symmetric."""
    assert nk_metric(X, Y) == nk_metric(Y, X)
    assert nk_metric(apply_J(X), apply_J(Y)) == nk_metric(X, Y)
    assert nk_metric(apply_P(X), apply_P(Y)) == nk_metric(X, Y)


@given(X=tangents, Y=tangents, Z=tangents)
@settings(max_examples=50)
@pytest.mark.fuzz
def test_fuzz_nearly_kaehler_identities(X, Y, Z):
    """Use Hypothesis to confirm the algebraic identities of G exactly."""
    assert manifold.frame_norm(tensor_G(X, X)) == 0
    assert tensor_G(X, Y) == -tensor_G(Y, X)
    assert tensor_G(X, apply_J(Y)) == -apply_J(tensor_G(X, Y))
    assert apply_P(tensor_G(X, Y)) == -tensor_G(apply_P(X), apply_P(Y))
    assert nk_metric(tensor_G(X, Y), Z) + nk_metric(Y, tensor_G(X, Z)) == 0


@given(X=tangents, Y=tangents)
@pytest.mark.fuzz
def test_fuzz_metric_conversions(X, Y):
    """Use Hypothesis to confirm the conversions between the metrics and structures."""
    assert manifold.q_metric_residual(X, Y) == 0
    assert manifold.product_from_q_residual(X, Y) == 0
    assert manifold.product_from_g_residual(X, Y) == 0
    assert manifold.g_from_product_residual(X, Y) == 0
    assert manifold.frame_norm(manifold.q_from_p_residual(X)) == 0
    assert manifold.p_from_q(X) == apply_P(X)


@given(X=tangents, Y=tangents, Z=tangents, W=tangents)
@settings(max_examples=25)
@pytest.mark.fuzz
def test_fuzz_closed_forms_exact(X, Y, Z, W):
    """Use Hypothesis to confirm g(G, G) and G(X, G(Z, W)) against direct evaluation."""
    assert nk_metric(tensor_G(X, Y), tensor_G(Z, W)) == manifold.g_GG(X, Y, Z, W)
    assert tensor_G(X, tensor_G(Z, W)) == manifold.G_of_G(X, Z, W)


def test_curvature_symmetries_on_frame():
    """Confirm that R(U, V) is antisymmetric in U and V on the frame."""
    for i in FRAME:
        for j in FRAME:
            (U, V, W) = (frame(i), frame(j), frame(FrameIndex.E1))
            assert manifold.curvature(U, V, W) == -manifold.curvature(V, U, W)


@given(seed=seeds)
@settings(max_examples=20)
@pytest.mark.fuzz
def test_fuzz_curvature_agrees_with_invariant_extensions(seed):
    """Use Hypothesis to confirm the closed-form curvature at random points."""
    rng = np.random.default_rng(seed)
    (U, V, W) = manifold.random_tangents(rng, 3)
    difference = manifold.curvature(U, V, W) - manifold.invariant_curvature(U, V, W)
    assert manifold.frame_norm(difference) <= 1e-12  # noqa: PLR2004


@given(seed=seeds)
@settings(max_examples=20)
@pytest.mark.fuzz
def test_fuzz_random_unit_tangent(seed):
    """Use Hypothesis to confirm that unit samples have |g(v, v)| = 1."""
    rng = np.random.default_rng(seed)
    point = manifold.random_point(rng)
    v = manifold.random_unit_tangent(rng, point)
    assert abs(abs(float(nk_metric(v, v))) - 1.0) <= 1e-12  # noqa: PLR2004
    assert point.A.membership_residual() <= 1e-10  # noqa: PLR2004


def test_base_point_mismatch():
    """Confirm that vectors at different points cannot be combined."""
    other = NKPoint(sl2.sl2_exp(TraceZero(0.5, 0.0, 0.0)), sl2.Sl2Point.identity())
    with pytest.raises(manifold.BasePointMismatchError):
        frame(FrameIndex.E1) + manifold.frame_field(FrameIndex.E1, other)
    with pytest.raises(manifold.BasePointMismatchError):
        nk_metric(frame(FrameIndex.E1), manifold.frame_field(FrameIndex.E2, other))


def test_frame_coefficients():
    """Confirm the construction and the validation of frame coefficients."""
    with pytest.raises(ValueError):
        FrameCoeffs((1, 2, 3))
    unit = FrameCoeffs.unit(FrameIndex.F2)
    assert unit[FrameIndex.F2] == 1
    assert unit.to_tangent() == frame(FrameIndex.F2)
    assert FrameCoeffs.from_tangent(frame(FrameIndex.F2)) == unit
    assert str(unit) == "(1)F2"
    assert FrameCoeffs.zero().is_zero()
    assert FrameIndex.F3.basis == 3  # noqa: PLR2004
    assert FrameIndex.F3.factor == "F"


def test_connection_shift_is_symmetric():
    """Confirm that the difference of the two connections is symmetric in its arguments."""
    for i in FRAME:
        for j in FRAME:
            (X, Y) = (frame(i), frame(j))
            assert manifold.connection_shift(X, Y) == manifold.connection_shift(Y, X)


def test_product_metric_is_left_invariant():
    """Confirm that the coefficient pairing equals the pairing of the raw matrices at a point."""
    point = NKPoint(
        sl2.Sl2Point(sl2.Mat2.from_rows([[2, 1], [1, 1]])),
        sl2.Sl2Point(sl2.Mat2.from_rows([[1, 2], [3, 7]])),
    )
    X = Tangent(point, TraceZero(1, 2, -1), TraceZero(0, 1, 3))
    Y = Tangent(point, TraceZero(-2, 1, 1), TraceZero(1, -1, 2))
    ((u, v), (u_prime, v_prime)) = (X.raw(), Y.raw())
    raw_pairing = sl2.minkowski_inner(u, u_prime) + sl2.minkowski_inner(v, v_prime)
    assert manifold.product_metric(X, Y) == raw_pairing
    assert nk_metric(X, Y) == Fraction(2, 3) * raw_pairing - Fraction(
        1, 3
    ) * manifold.product_metric(apply_P(X), Y)


def test_ambient_to_nk_recovers_the_connection_at_the_identity():
    """Confirm that the flat derivative of E1 along E2 gives nabla_E2 E1 = -E3."""
    (e1, e2) = (TraceZero.basis(1).to_mat2(), TraceZero.basis(2).to_mat2())
    # d/dh exp(h e2) e1 at h = 0
    derivative = (e2 @ e1, sl2.Mat2.zero())
    recovered = manifold.ambient_to_nk(
        derivative, frame(FrameIndex.E2), frame(FrameIndex.E1), IDENTITY
    )
    assert recovered.coefficients() == FrameCoeffs.from_mapping({FrameIndex.E3: -1})


def test_ambient_to_nk_removes_the_normal_part():
    """Confirm that the normal components along F and QF are subtracted exactly."""
    e1 = TraceZero.basis(1).to_mat2()
    derivative = (e1 @ e1, sl2.Mat2.zero())
    assert derivative[0] == sl2.Mat2.identity()
    recovered = manifold.ambient_to_nk(
        derivative, frame(FrameIndex.E1), frame(FrameIndex.E1), IDENTITY
    )
    assert recovered.coefficients() == FrameCoeffs.zero()
