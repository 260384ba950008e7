"""Pytest test suite for the util module."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies

from nkverify import util
from nkverify.field import Scalar


def test_human_readable_boolean() -> None:
    """Confirm that booleans become Yes and No."""
    assert util.get_human_readable_boolean(answer=True) == "Yes"
    assert util.get_human_readable_boolean(answer=False) == "No"


@given(answer=strategies.booleans())
@pytest.mark.fuzz
def test_fuzz_human_readable_boolean_correct_string(answer: bool) -> None:
    """Use Hypothesis to confirm that the conversion to human-readable works."""
    str_answer = util.get_human_readable_boolean(answer=answer)
    if answer:
        assert str_answer == "Yes"
    else:
        assert str_answer == "No"


def test_symbol_boolean() -> None:
    """Confirm that booleans become colored check and cross marks."""
    assert "✓" in util.get_symbol_boolean(True)
    assert "✗" in util.get_symbol_boolean(False)


def test_version_is_a_string() -> None:
    """Confirm that a version string is always available."""
    version_string = util.get_nkverify_version()
    assert isinstance(version_string, str)
    assert version_string.count(".") >= 2  # noqa: PLR2004


@pytest.mark.parametrize(
    "amount,expected",
    [
        (0, "0"),
        (Fraction(0), "0"),
        (Scalar(0, 0), "0"),
        (0.0, "0.000e+00"),
        (1.5e-9, "1.500e-09"),
        (-2.0, "2.000e+00"),
        (Fraction(1, 4), "2.500e-01"),
    ],
)
def test_format_residual(amount, expected) -> None:
    """Confirm that residuals are written as stable decimal strings."""
    assert util.format_residual(amount) == expected


@given(amount=strategies.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@pytest.mark.fuzz
def test_fuzz_format_residual_is_nonnegative(amount: float) -> None:
    """Use Hypothesis to confirm that a residual is written without a sign."""
    assert not util.format_residual(amount).startswith("-")


def test_format_tolerance() -> None:
    """Confirm that an absent tolerance is written as exact."""
    assert util.format_tolerance(None) == "exact"
    assert util.format_tolerance(1e-8) == "1.000e-08"
