"""Pytest test suite for the field module."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies

from nkverify import enumerations, field
from nkverify.field import SQRT3, Scalar

rationals = strategies.fractions(max_denominator=50).filter(
    lambda x: abs(x) < 1000  # noqa: PLR2004
)
scalars = strategies.builds(Scalar, rationals, rationals)


def test_sqrt3_squares_to_three():
    """Confirm that the generator of the field squares to three."""
    assert SQRT3 * SQRT3 == 3  # noqa: PLR2004
    assert field.INV_SQRT3 * SQRT3 == 1
    assert (SQRT3 * SQRT3).is_rational
    assert not SQRT3.is_rational
    assert SQRT3 * SQRT3 != Fraction(3) + SQRT3


def test_scalar_rejects_floats_and_booleans():
    """Confirm that exact coefficients must be rational."""
    with pytest.raises(TypeError):
        Scalar(0.5)  # type: ignore[arg-type]
    with pytest.raises(TypeError):
        Scalar(True)


def test_division_by_zero():
    """Confirm that dividing by an exact zero raises an error."""
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)
    with pytest.raises(ZeroDivisionError):
        field.reciprocal(Scalar(0))


def test_float_mixing_falls_back_to_float():
    """Confirm that mixing with a float leaves the exact path."""
    mixed = Scalar(1, 1) + 0.5
    assert isinstance(mixed, float)
    assert mixed == pytest.approx(1.5 + 3**0.5)
    assert not field.is_exact(mixed)
    assert field.is_exact(Scalar(1) * Fraction(1, 2))


def test_exact_sign():
    """Confirm the exact sign of values with components of opposite sign."""
    assert Scalar(2, -1).sign() == 1
    assert Scalar(1, -1).sign() == -1
    assert Scalar(-2, 1).sign() == -1
    assert Scalar(-1, 1).sign() == 1
    assert Scalar(0, 0).sign() == 0


def test_ordering_and_sorting():
    """Confirm that exact values sort by their real value."""
    values = [Scalar(0, Fraction(1, 4)), Scalar(Fraction(-1, 4)), Scalar(0), Scalar(1, -1)]
    assert sorted(values) == [Scalar(1, -1), Scalar(Fraction(-1, 4)), Scalar(0), Scalar(0, Fraction(1, 4))]


def test_render():
    """Confirm how values are rendered in report witnesses."""
    assert field.render(Scalar(Fraction(7, 12))) == "7/12"
    assert field.render(Scalar(0, Fraction(1, 4))) == "1/4√3"
    assert field.render(Scalar(1, -1)) == "1 - √3"
    assert field.render(SQRT3) == "√3"
    assert field.render(0.25) == "0.25"


def test_value_modes():
    """Confirm that values are built in the requested arithmetic."""
    assert field.value(1, 1) == Scalar(1, 1)
    assert isinstance(field.value(1, 1, enumerations.Arithmetic.FLOAT), float)


def test_is_zero_with_tolerance():
    """Confirm that exact values ignore the tolerance and floats use it."""
    assert field.is_zero(Scalar(0))
    assert not field.is_zero(Scalar(Fraction(1, 10**20)), tolerance=1.0)
    assert field.is_zero(1e-13, tolerance=1e-12)


@given(x=scalars, y=scalars, z=scalars)
@pytest.mark.fuzz
def test_fuzz_field_axioms(x, y, z):
    """Use Hypothesis to confirm that exact arithmetic is associative and distributive."""
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


@given(x=scalars)
@pytest.mark.fuzz
def test_fuzz_inverse(x):
    """Use Hypothesis to confirm that every nonzero value has an inverse."""
    if x == 0:
        return
    assert x * x.inverse() == 1
    assert x.norm() == x * x.conjugate()


@given(x=scalars, y=scalars)
@pytest.mark.fuzz
def test_fuzz_sign_agrees_with_float(x, y):
    """Use Hypothesis to confirm that the exact order agrees with the float order away from ties."""
    if abs(float(x) - float(y)) > 1e-9:  # noqa: PLR2004
        assert (x < y) == (float(x) < float(y))


@given(value=rationals)
@pytest.mark.fuzz
def test_fuzz_float_round_trip(value):
    """Use Hypothesis to confirm that representable rationals survive the float round trip."""
    dyadic = Fraction(float(value))
    assert Scalar.from_float(float(Scalar(dyadic))) == Scalar(dyadic)
