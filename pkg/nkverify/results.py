"""Store the configuration and the results of a verification run."""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from nkverify import constants, enumerations, immersions

# Note: the nesting of the class definitions is from the
# bottom of this file to the top because the top-level
# object can only refer to others that already exist

# Nesting structure:

# VerificationReport
# --> suite
# --> config --> SuiteConfig
#     --> tolerance
#     --> curvature_tolerance
#     --> step
#     --> grid
#     --> seed
#     --> samples
#     --> format
#     --> timing
#     --> surfaces
# --> checks --> CheckRecord
#     --> name
#     --> kind
#     --> max_residual
#     --> tolerance
#     --> pass
#     --> witness
# --> pass
# --> elapsed_ms
#
# Residuals and tolerances are decimal strings so that
# the json form of a report does not drift across platforms


class SuiteConfig(BaseModel):
    """Define a Pydantic model for the configuration of a suite."""

    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(default=constants.tolerances.Algebraic, gt=0)
    curvature_tolerance: float = Field(default=constants.tolerances.Curvature, gt=0)
    step: float = Field(default=constants.tolerances.Jet_Step, gt=0)
    grid: int = Field(default=constants.defaults.Grid, ge=1)
    seed: int = Field(default=constants.defaults.Seed, ge=0, lt=2**64)
    samples: int = Field(default=constants.defaults.Samples, ge=1)
    format: enumerations.OutputFormat = enumerations.OutputFormat.TEXT
    timing: bool = True
    surfaces: List[str] = Field(default_factory=immersions.registry_names)

    @field_validator("surfaces")
    @classmethod
    def surfaces_are_registered(cls, surfaces: List[str]) -> List[str]:
        """Confirm that every surface name is in the registry."""
        unknown = [name for name in surfaces if name not in immersions.REGISTRY]
        if unknown:
            raise ValueError(
                f"Unknown surface {', '.join(unknown)}; choose from {', '.join(immersions.registry_names())}"
            )
        return surfaces


class CheckRecord(BaseModel):
    """Define a Pydantic model for the outcome of one check."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    kind: enumerations.RecordKind
    max_residual: str
    tolerance: str
    passed: bool = Field(alias="pass")
    witness: Optional[Dict[str, str]] = None


class VerificationReport(BaseModel):
    """Define a Pydantic model for the report of a suite."""

    model_config = ConfigDict(populate_by_name=True)

    suite: str
    config: SuiteConfig
    checks: List[CheckRecord] = []
    passed: bool = Field(alias="pass")
    elapsed_ms: int = 0

    @classmethod
    def assemble(
        cls,
        suite: str,
        config: SuiteConfig,
        checks: List[CheckRecord],
        elapsed_ms: int = 0,
    ) -> "VerificationReport":
        """Build a report that passes only when every check passes."""
        return cls(
            suite=suite,
            config=config,
            checks=checks,
            passed=all(check.passed for check in checks),
            elapsed_ms=elapsed_ms if config.timing else 0,
        )

    def failures(self) -> List[CheckRecord]:
        """Return the checks that did not pass."""
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> str:
        """Serialize the report with the "pass" field names."""
        return self.model_dump_json(by_alias=True, indent=2)
