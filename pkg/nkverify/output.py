"""Perform logging and/or console output."""

import logging
from typing import Any

from rich.console import Console
from rich.table import Table

from nkverify import configuration, constants, debug, results, util

# declare a default logger
logger: logging.Logger = logging.getLogger()

# create a default console
console = Console()

# create a console for errors so that standard output only holds a report
error_console = Console(stderr=True)

# define a small bullet for display
small_bullet_unicode = constants.markers.Small_Bullet_Unicode


def setup(
    debug_level: debug.DebugLevel, debug_destination: debug.DebugDestination
) -> None:
    """Perform the setup steps and return a Console for terminal-based display."""
    global logger  # noqa: disable=PLW0603
    # configure the use of rich for improved terminal output:
    # --> rich-based tracebacks to enable better debugging on program crash
    configuration.configure_tracebacks()
    # --> logging to keep track of key events during program execution;
    # pass in the actual values as strings instead of using class enums
    logger, _ = configuration.configure_logging(
        debug_level.value, debug_destination.value
    )


def print_diagnostics(verbose: bool, **configurations: Any) -> None:
    """Display all variables input to the function."""
    global console  # noqa: disable=PLW0603
    # display diagnostic information for each configuration keyword argument
    if verbose:
        console.print(":sparkles: Configured with these parameters:")
        # iterate through each of the configuration keyword arguments
        for configuration_current in configurations:
            # print the name and the value of the keyword argument
            console.print(
                f"{constants.markers.Indent}{configuration_current} = {configurations[configuration_current]}"
            )


def opt_print_log(verbose: bool, **contents: Any) -> None:
    """Produce logging information and only print when not verbose."""
    global console  # noqa: disable=PLW0603
    # iterate through each of the configuration keyword arguments
    for current in contents:
        # print the name and the value of the keyword argument
        # to the console if verbose mode is enabled
        if verbose:
            console.print(contents[current])
        # always log the information to the configured logger
        logger.debug(contents[current])


def print_header() -> None:
    """Display tool details in the header."""
    global console  # noqa: disable=PLW0603
    console.print()
    console.print(
        constants.nkverify.Emoji
        + constants.markers.Space
        + constants.nkverify.Tagline
    )
    console.print(constants.nkverify.Website)


def print_footer() -> None:
    """Display concluding details in the footer."""
    global console  # noqa: disable=PLW0603
    console.print()


def render_witness(witness: Any) -> str:
    """Render the witness of a record as one entry per line."""
    if not witness:
        return constants.markers.Empty_String
    return constants.markers.Newline.join(
        f"{key}: {value}" for (key, value) in witness.items()
    )


def create_report_table(report: results.VerificationReport) -> Table:
    """Create a rich table with one row for each check of a report."""
    table = Table(title=f":dizzy: Suite: {report.suite}", show_lines=False)
    table.add_column("Pass", justify="center")
    table.add_column("Check")
    table.add_column("Kind")
    table.add_column("Residual", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Witness", overflow="fold")
    for check in report.checks:
        table.add_row(
            util.get_symbol_boolean(check.passed),
            check.name,
            check.kind.value,
            check.max_residual,
            check.tolerance,
            render_witness(check.witness),
        )
    return table


def print_report(report: results.VerificationReport, verbose: bool = False) -> None:
    """Display a verification report as a table with a closing summary."""
    global console  # noqa: disable=PLW0603
    console.print()
    console.print(create_report_table(report))
    failures = report.failures()
    console.print()
    console.print(
        f"{util.get_symbol_boolean(report.passed)} {len(report.checks) - len(failures)}"
        f" of {len(report.checks)} checks passed in {report.elapsed_ms} ms"
    )
    # list the failing checks once more so they are not lost in a long table
    for check in failures:
        opt_print_log(
            verbose,
            failure=f"{constants.markers.Indent}{small_bullet_unicode} {check.name}:"
            f" residual {check.max_residual} against {check.tolerance}",
        )


def print_error(message: str) -> None:
    """Display an error message on standard error."""
    error_console.print(f":person_shrugging: {message}", soft_wrap=True)
