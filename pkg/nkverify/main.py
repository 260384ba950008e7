"""💫 Verify the nearly Kähler geometry of SL(2,R) x SL(2,R)."""

import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional

import typer
import yaml
from pydantic import ValidationError

from nkverify import (
    constants,
    debug,
    enumerations,
    immersions,
    output,
    results,
    suites,
    util,
    validate,
)

# create a Typer object to support the command-line interface
cli = typer.Typer(no_args_is_help=True)

# create a small bullet for display in the output
small_bullet_unicode = constants.markers.Small_Bullet_Unicode


# ---
# Region: Helper functions {{{
# ---


def output_preamble(
    verbose: bool,
    debug_level: debug.DebugLevel = debug.DebugLevel.ERROR,
    debug_destination: debug.DebugDestination = debug.DebugDestination.CONSOLE,
    header: bool = True,
    **kwargs,
) -> None:
    """Output all of the preamble content."""
    # setup the console and the logger through the output module;
    # log lines on standard output would corrupt a json report
    debug_destination = debug_destination.for_report(json_report=not header)
    output.setup(debug_level, debug_destination)
    output.logger.debug(f"Display verbose output? {verbose}")
    output.logger.debug(f"Debug level? {debug_level.value}")
    output.logger.debug(f"Debug destination? {debug_destination.value}")
    # a json report owns standard output, so the header
    # and the diagnostics are only displayed for text
    if not header:
        return
    output.print_header()
    output.print_diagnostics(
        verbose,
        debug_level=debug_level.value,
        debug_destination=debug_destination.value,
        **kwargs,
    )


def usage_error(message: str) -> NoReturn:
    """Display a usage error and exit with the usage error code."""
    output.print_error(message)
    sys.exit(constants.markers.Usage_Error_Exit)


def load_configuration_file(config: Optional[Path]) -> Dict[str, Any]:
    """Load and validate the settings of an optional YAML configuration file."""
    # there is no configuration file and thus no settings
    if config is None:
        return {}
    if not config.exists():
        usage_error(f"Configuration file {config} does not exist")
    with open(config) as configuration_file:
        yaml_data = yaml.safe_load(configuration_file) or {}
    # perform the validation of the configuration file
    (validated, errors) = validate.validate_configuration(yaml_data)
    output.logger.debug(
        f"Validated {config}? {util.get_human_readable_boolean(validated)}"
    )
    if not validated:
        usage_error(f"Validation errors in {config}:\n\n{errors}")
    return validate.extract_settings(yaml_data)


def build_configuration(config: Optional[Path], **flags: Any) -> results.SuiteConfig:
    """Merge a configuration file with the flags, which take precedence."""
    settings = load_configuration_file(config)
    settings.update({name: value for (name, value) in flags.items() if value is not None})
    try:
        return results.SuiteConfig(**settings)
    except ValidationError as validation_error:
        usage_error(f"Invalid configuration:\n\n{validation_error}")


def emit_report(report: results.VerificationReport, verbose: bool = False) -> None:
    """Display a report in the configured format and exit with its status."""
    if report.config.format == enumerations.OutputFormat.JSON:
        # every json document is checked against the report schema
        (validated, errors) = validate.validate_report(
            report.model_dump(by_alias=True, mode="json")
        )
        if not validated:
            output.print_error(f"Report does not match the schema:\n\n{errors}")
            sys.exit(constants.markers.Non_Zero_Exit)
        typer.echo(report.to_json())
    else:
        output.print_report(report, verbose)
        output.print_footer()
    if not report.passed:
        sys.exit(constants.markers.Non_Zero_Exit)


# ---
# End region: Helper functions }}}
# ---


# ---
# Region: Command-line interface functions {{{
# ---

TOLERANCE_OPTION = typer.Option(
    None, "--tol", help="Tolerance for algebraic and sampled checks."
)
CURVATURE_OPTION = typer.Option(
    None, "--curv-tol", help="Tolerance for Gaussian curvature checks."
)
STEP_OPTION = typer.Option(None, "--step", help="Step for finite differences.")
GRID_OPTION = typer.Option(None, "--grid", help="Number of samples per grid axis.")
SEED_OPTION = typer.Option(None, "--seed", help="Seed for random samples.")
SAMPLES_OPTION = typer.Option(None, "--samples", help="Number of random samples.")
FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Format of the report.")
TIMING_OPTION = typer.Option(
    None, "--timing/--no-timing", help="Record the elapsed time in the report."
)
CONFIG_OPTION = typer.Option(
    None, "--config", "-c", help="A YAML file with default settings."
)
DEBUG_LEVEL_OPTION = typer.Option(
    debug.DebugLevel.ERROR.value,
    "--debug-level",
    "-l",
    help="Specify the level of debugging output.",
)
DEBUG_DEST_OPTION = typer.Option(
    debug.DebugDestination.CONSOLE.value,
    "--debug-dest",
    "-t",
    help="Specify the destination for debugging output.",
)
VERBOSE_OPTION = typer.Option(False, help="Enable verbose mode output.")


def run_suite(  # noqa: PLR0913
    suite: str,
    config: Optional[Path],
    debug_level: debug.DebugLevel,
    debug_destination: debug.DebugDestination,
    verbose: bool,
    **flags: Any,
) -> results.VerificationReport:
    """Build the configuration, output the preamble and run one suite."""
    cfg = build_configuration(config, **flags)
    output_preamble(
        verbose,
        debug_level,
        debug_destination,
        header=cfg.format == enumerations.OutputFormat.TEXT,
        suite=suite,
        **cfg.model_dump(),
    )
    if suite == constants.suites.Structure:
        return suites.cmd_structure(cfg)
    if suite == constants.suites.Frame_Case:
        return suites.cmd_frame_case(cfg)
    if suite == constants.suites.All:
        return suites.cmd_report_all(cfg)
    return suites.cmd_surface(suite.removeprefix(constants.suites.Surface_Prefix), cfg)


@cli.command()
def structure(  # noqa: PLR0913
    tolerance: Optional[float] = TOLERANCE_OPTION,
    curvature_tolerance: Optional[float] = CURVATURE_OPTION,
    step: Optional[float] = STEP_OPTION,
    seed: Optional[int] = SEED_OPTION,
    samples: Optional[int] = SAMPLES_OPTION,
    output_format: Optional[enumerations.OutputFormat] = FORMAT_OPTION,
    timing: Optional[bool] = TIMING_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    debug_level: debug.DebugLevel = DEBUG_LEVEL_OPTION,
    debug_destination: debug.DebugDestination = DEBUG_DEST_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """🧭 Verify the tables, identities and curvature of the structure."""
    report = run_suite(
        constants.suites.Structure,
        config,
        debug_level,
        debug_destination,
        verbose,
        tolerance=tolerance,
        curvature_tolerance=curvature_tolerance,
        step=step,
        seed=seed,
        samples=samples,
        format=output_format,
        timing=timing,
    )
    emit_report(report, verbose)


@cli.command()
def surface(  # noqa: PLR0913
    name: str = typer.Argument(help="Name of a registered immersion."),
    tolerance: Optional[float] = TOLERANCE_OPTION,
    curvature_tolerance: Optional[float] = CURVATURE_OPTION,
    step: Optional[float] = STEP_OPTION,
    grid: Optional[int] = GRID_OPTION,
    seed: Optional[int] = SEED_OPTION,
    samples: Optional[int] = SAMPLES_OPTION,
    output_format: Optional[enumerations.OutputFormat] = FORMAT_OPTION,
    timing: Optional[bool] = TIMING_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    debug_level: debug.DebugLevel = DEBUG_LEVEL_OPTION,
    debug_destination: debug.DebugDestination = DEBUG_DEST_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """🌐 Verify the geometry of a registered immersion."""
    # the name must be checked before any work is done
    if name not in immersions.REGISTRY:
        usage_error(
            f"Unknown surface '{name}'; choose from"
            f" {constants.markers.Comma_Space.join(immersions.registry_names())}"
        )
    report = run_suite(
        constants.suites.Surface_Prefix + name,
        config,
        debug_level,
        debug_destination,
        verbose,
        tolerance=tolerance,
        curvature_tolerance=curvature_tolerance,
        step=step,
        grid=grid,
        seed=seed,
        samples=samples,
        format=output_format,
        timing=timing,
    )
    emit_report(report, verbose)


@cli.command(name="frame-case")
def frame_case(  # noqa: PLR0913
    tolerance: Optional[float] = TOLERANCE_OPTION,
    output_format: Optional[enumerations.OutputFormat] = FORMAT_OPTION,
    timing: Optional[bool] = TIMING_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    debug_level: debug.DebugLevel = DEBUG_LEVEL_OPTION,
    debug_destination: debug.DebugDestination = DEBUG_DEST_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """🧮 Verify the adapted frame and the nonexistence certificate."""
    report = run_suite(
        constants.suites.Frame_Case,
        config,
        debug_level,
        debug_destination,
        verbose,
        tolerance=tolerance,
        format=output_format,
        timing=timing,
    )
    emit_report(report, verbose)


@cli.command(name="all")
def report_all(  # noqa: PLR0913
    tolerance: Optional[float] = TOLERANCE_OPTION,
    curvature_tolerance: Optional[float] = CURVATURE_OPTION,
    step: Optional[float] = STEP_OPTION,
    grid: Optional[int] = GRID_OPTION,
    seed: Optional[int] = SEED_OPTION,
    samples: Optional[int] = SAMPLES_OPTION,
    surfaces: Optional[List[str]] = typer.Option(
        None, "--surface", "-s", help="A registered immersion to include."
    ),
    output_format: Optional[enumerations.OutputFormat] = FORMAT_OPTION,
    timing: Optional[bool] = TIMING_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    debug_level: debug.DebugLevel = DEBUG_LEVEL_OPTION,
    debug_destination: debug.DebugDestination = DEBUG_DEST_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """✨ Run every verification suite."""
    report = run_suite(
        constants.suites.All,
        config,
        debug_level,
        debug_destination,
        verbose,
        tolerance=tolerance,
        curvature_tolerance=curvature_tolerance,
        step=step,
        grid=grid,
        seed=seed,
        samples=samples,
        surfaces=surfaces or None,
        format=output_format,
        timing=timing,
    )
    emit_report(report, verbose)


@cli.command()
def version():
    """🖥️  Display the version of nkverify."""
    # get the nkverify version from the util file
    version_string = util.get_nkverify_version()
    # output the nkverify version
    typer.echo(f"{constants.nkverify.Name} {version_string}")


# ---
# End region: Command-line interface functions }}}
# ---
