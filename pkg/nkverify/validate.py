"""Validate configuration files and the json form of reports."""

from typing import Any, Dict, Tuple

import jsonschema
from jsonschema.exceptions import ValidationError

from nkverify import constants, immersions

# intuitive description:
# a configuration file has one "nkverify" key whose entries
# mirror the command-line flags; every entry is optional
JSON_SCHEMA_CONFIG = {
    "type": "object",
    "required": [],
    "properties": {
        "nkverify": {
            "type": "object",
            "properties": {
                "tolerance": {"type": "number", "exclusiveMinimum": 0},
                "curvature_tolerance": {"type": "number", "exclusiveMinimum": 0},
                "step": {"type": "number", "exclusiveMinimum": 0},
                "grid": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
                "samples": {"type": "integer", "minimum": 1},
                "format": {"enum": ["text", "json"]},
                "timing": {"type": "boolean"},
                "surfaces": {
                    "type": "array",
                    "items": {"enum": immersions.registry_names()},
                },
            },
            "additionalProperties": False,
        },
    },
}

# intuitive description:
# a report names its suite, repeats its configuration and
# holds one record for each check that was run
JSON_SCHEMA_RECORD = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "kind": {"enum": ["exact", "numeric", "informational"]},
        "max_residual": {"type": "string"},
        "tolerance": {"type": "string"},
        "pass": {"type": "boolean"},
        "witness": {
            "anyOf": [
                {"type": "null"},
                {"type": "object", "additionalProperties": {"type": "string"}},
            ]
        },
    },
    "required": ["name", "kind", "max_residual", "tolerance", "pass"],
    "additionalProperties": False,
}

JSON_SCHEMA_REPORT = {
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "config": JSON_SCHEMA_CONFIG["properties"]["nkverify"],  # type: ignore[index]
        "checks": {"type": "array", "items": JSON_SCHEMA_RECORD},
        "pass": {"type": "boolean"},
        "elapsed_ms": {"type": "integer", "minimum": 0},
    },
    "required": ["suite", "config", "checks", "pass", "elapsed_ms"],
    "additionalProperties": False,
}


def extract_settings(configuration: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    """Return the entries below the main "nkverify" key, if there are any."""
    return dict(configuration.get(constants.nkverify.Application_Name, {}) or {})


def validate_configuration(
    configuration: Dict[str, Any],
    schema: Dict[str, Any] = JSON_SCHEMA_CONFIG,
) -> Tuple[bool, str]:
    """Validate the main configuration."""
    # indicate that validation passed; since there
    # were no validation errors, return an empty string
    try:
        jsonschema.validate(configuration, schema)
        return (True, constants.markers.Empty_String)
    # indicate that validation failed;
    # since validation errors exist, package them up
    # and return them along with the indication
    except ValidationError as validation_error:
        error_message = str(validation_error)
        error_message = error_message.lstrip()
        return (False, error_message)


def validate_report(report: Dict[str, Any]) -> Tuple[bool, str]:
    """Validate the json form of a verification report."""
    return validate_configuration(report, JSON_SCHEMA_REPORT)
