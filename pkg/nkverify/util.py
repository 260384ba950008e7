"""Utilities for use within nkverify."""

import importlib.metadata
from fractions import Fraction
from typing import Union

from nkverify import constants, field

checkmark_unicode = "✓"
xmark_unicode = "✗"
default_nkverify_semver = "0.0.0"


def get_human_readable_boolean(answer: bool) -> str:
    """Produce a human-readable Yes or No for a boolean value of True or False."""
    # the provided answer is true
    if answer:
        return constants.humanreadable.Yes
    # the provided answer is false
    return constants.humanreadable.No


def get_symbol_boolean(answer: bool) -> str:
    """Produce a symbol-formatted version of a boolean value of True or False."""
    if answer:
        return f"[green]{checkmark_unicode}[/green]"
    return f"[red]{xmark_unicode}[/red]"


def get_nkverify_version() -> str:
    """Use importlib to extract the version of the package."""
    # the version function does not work when nkverify runs from a source
    # checkout without an installed distribution; fall back to 0.0.0 there
    try:
        version_string = importlib.metadata.version(
            constants.nkverify.Application_Name
        )
    except importlib.metadata.PackageNotFoundError:
        version_string = default_nkverify_semver
    return version_string


def format_residual(amount: Union[float, field.Number]) -> str:
    """Serialize a residual as a decimal string that is stable across platforms."""
    # an exact zero is written as "0" and everything else in scientific
    # notation with a fixed number of digits
    if field.is_exact(amount) and amount == 0:
        return str(constants.markers.Zero)
    return constants.defaults.Residual_Format.format(abs(float(amount)))


def format_tolerance(tolerance: Union[float, Fraction, None]) -> str:
    """Serialize a tolerance, using the exact marker for tolerance-free checks."""
    if tolerance is None:
        return constants.humanreadable.Exact
    return constants.defaults.Residual_Format.format(float(tolerance))
