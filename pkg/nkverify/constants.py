"""Define constants with dataclasses for use in nkverify."""

from dataclasses import dataclass


# nkverify constant
@dataclass(frozen=True)
class Nkverify:
    """Define the Nkverify dataclass for constant(s)."""

    Application_Name: str
    Emoji: str
    Name: str
    Separator: str
    Tagline: str
    Website: str


nkverify = Nkverify(
    Application_Name="nkverify",
    Emoji=":dizzy:",
    Name="nkverify",
    Separator="/",
    Tagline="nkverify: Verify the nearly Kähler geometry of SL(2,R) x SL(2,R)",
    Website=":link: Run 'nkverify --help' for the list of verification suites",
)


# humanreadable constant
@dataclass(frozen=True)
class Humanreadable:
    """Define the Humanreadable dataclass for constant(s)."""

    Yes: str
    No: str
    Exact: str
    Informational: str


humanreadable = Humanreadable(
    Yes="Yes", No="No", Exact="exact", Informational="informational"
)


# logger constant
@dataclass(frozen=True)
class Logger:
    """Define the Logger dataclass for constant(s)."""

    Function_Prefix: str
    Richlog: str


logger = Logger(
    Function_Prefix="configure_logging_",
    Richlog="nkverify-richlog",
)


# logging constant
@dataclass(frozen=True)
class Logging:
    """Define the Logging dataclass for constant(s)."""

    Debug: str
    Info: str
    Warning: str
    Error: str
    Critical: str
    Console_Logging_Destination: str
    Stdout_Logging_Destination: str
    Default_Logging_Destination: str
    Default_Logging_Level: str
    Format: str


logging = Logging(
    Debug="DEBUG",
    Info="INFO",
    Warning="WARNING",
    Error="ERROR",
    Critical="CRITICAL",
    Console_Logging_Destination="CONSOLE",
    Stdout_Logging_Destination="STDOUT",
    Default_Logging_Destination="console",
    Default_Logging_Level="ERROR",
    Format="%(message)s",
)


# markers constant
@dataclass(frozen=True)
class Markers:
    """Define the Markers dataclass for constant(s)."""

    Comma_Space: str
    Empty_String: str
    Indent: str
    Newline: str
    Non_Zero_Exit: int
    Small_Bullet_Unicode: str
    Space: str
    Usage_Error_Exit: int
    Zero: int
    Zero_Exit: int


markers = Markers(
    Comma_Space=", ",
    Empty_String="",
    Indent="   ",
    Newline="\n",
    Non_Zero_Exit=1,
    Small_Bullet_Unicode="•",
    Space=" ",
    Usage_Error_Exit=2,
    Zero=0,
    Zero_Exit=0,
)


# tolerances constant
@dataclass(frozen=True)
class Tolerances:
    """Define the Tolerances dataclass for constant(s)."""

    Algebraic: float
    Convergence_Ratio: float
    Convergence_Step: float
    Curvature: float
    Curvature_Step: float
    Degenerate_Metric: float
    Exp_Series_Threshold: float
    Jet_Step: float
    Membership: float
    Membership_Guard: float
    Sampled_Identity: float
    Second_Order: float
    Unit_Sample_Floor: float


tolerances = Tolerances(
    Algebraic=1e-8,
    Convergence_Ratio=3.5,
    Convergence_Step=0.1,
    Curvature=1e-4,
    Curvature_Step=5e-3,
    Degenerate_Metric=1e-9,
    Exp_Series_Threshold=1e-12,
    Jet_Step=1e-3,
    Membership=1e-10,
    Membership_Guard=1e-8,
    Sampled_Identity=1e-12,
    Second_Order=1e-5,
    Unit_Sample_Floor=0.1,
)


# defaults constant
@dataclass(frozen=True)
class Defaults:
    """Define the Defaults dataclass for constant(s)."""

    Flat_Grid_Radius: float
    Grid: int
    Hyperbolic_Grid_Radius: float
    Hyperbolic_Annulus: float
    Residual_Format: str
    Samples: int
    Seed: int


defaults = Defaults(
    Flat_Grid_Radius=1.0,
    Grid=5,
    Hyperbolic_Grid_Radius=0.55,
    Hyperbolic_Annulus=0.05,
    Residual_Format="{:.3e}",
    Samples=200,
    Seed=0,
)


# suites constant
@dataclass(frozen=True)
class Suites:
    """Define the Suites dataclass for constant(s)."""

    All: str
    Frame_Case: str
    Structure: str
    Surface_Prefix: str


suites = Suites(
    All="all",
    Frame_Case="frame-case",
    Structure="structure",
    Surface_Prefix="surface:",
)
