"""Levels and destinations for the log messages of a verification run."""

from enum import Enum


class DebugLevel(str, Enum):
    """The logging levels; WARNING also reports failing checks and ledger entries."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class DebugDestination(str, Enum):
    """The stream that receives log messages."""

    CONSOLE = "CONSOLE"
    STDOUT = "STDOUT"

    def for_report(self, json_report: bool) -> "DebugDestination":
        """Return a destination that leaves standard output to a json report."""
        if json_report and self == DebugDestination.STDOUT:
            return DebugDestination.CONSOLE
        return self
