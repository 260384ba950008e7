"""Define enumerations for the modules in nkverify."""

from enum import Enum


class Arithmetic(str, Enum):
    """Define the arithmetic modes of a scalar computation."""

    EXACT = "exact"
    FLOAT = "float"


class OutputFormat(str, Enum):
    """Define the formats for displaying a verification report."""

    TEXT = "text"
    JSON = "json"


class PTangency(str, Enum):
    """Define how the almost product structure acts on a tangent plane."""

    P_TANGENT = "P-tangent"
    P_NORMAL = "P-normal"
    MIXED = "mixed"


class MetricSignature(str, Enum):
    """Define the signatures of an induced surface metric."""

    POSITIVE_DEFINITE = "positive definite"
    NEGATIVE_DEFINITE = "negative definite"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


class RecordKind(str, Enum):
    """Define how the outcome of a check record is decided."""

    EXACT = "exact"
    NUMERIC = "numeric"
    INFORMATIONAL = "informational"
