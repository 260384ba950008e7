"""Pytest test suite for the debug module."""

import pytest

from nkverify.debug import DebugDestination, DebugLevel


def test_debug_level_values():
    """Confirm that all of the enumeration values are correct."""
    assert DebugLevel.DEBUG == "DEBUG"
    assert DebugLevel.INFO == "INFO"
    assert DebugLevel.WARNING == "WARNING"
    assert DebugLevel.ERROR == "ERROR"
    assert DebugLevel.CRITICAL == "CRITICAL"


def test_debug_level_iteration():
    """Confirm that it is possible to list all of the possible values."""
    assert list(DebugLevel) == ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def test_debug_destination_values():
    """Confirm that all of the enumeration values are correct."""
    assert DebugDestination.CONSOLE == "CONSOLE"
    assert DebugDestination.STDOUT == "STDOUT"


def test_debug_destination_iteration():
    """Confirm that it is possible to list all of the possible values."""
    assert list(DebugDestination) == ["CONSOLE", "STDOUT"]


@pytest.mark.parametrize("enumeration", [DebugLevel, DebugDestination])
def test_debug_invalid(enumeration):
    """Confirm that invalid values raise a ValueError."""
    with pytest.raises(ValueError):
        enumeration("INVALID")


@pytest.mark.parametrize(
    "destination,json_report,expected",
    [
        (DebugDestination.STDOUT, True, DebugDestination.CONSOLE),
        (DebugDestination.STDOUT, False, DebugDestination.STDOUT),
        (DebugDestination.CONSOLE, True, DebugDestination.CONSOLE),
        (DebugDestination.CONSOLE, False, DebugDestination.CONSOLE),
    ],
)
def test_debug_destination_for_report(destination, json_report, expected):
    """Confirm that a json report moves log messages off standard output."""
    assert destination.for_report(json_report) == expected
