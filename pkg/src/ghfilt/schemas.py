"""JSON schemas for case configurations and reports.

Rationals are always strings ("3", "-1/2") so nothing passes through a float.
Unknown keys are rejected everywhere.
"""
from __future__ import annotations

import jsonschema

from .rootsys import CARTAN_TYPES

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
VECTOR = {"type": "array", "items": RATIONAL}
MATRIX = {"type": "array", "items": VECTOR}
NAMES = {"type": "array", "items": {"type": "string"}, "uniqueItems": True}

DATUM = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "type": {"enum": sorted(CARTAN_TYPES)},
        "pairing": MATRIX,
        "names": NAMES,
        "k": {"oneOf": [RATIONAL, VECTOR, {"type": "object", "additionalProperties": RATIONAL}]},
    },
    "oneOf": [{"required": ["type"]}, {"required": ["pairing"]}],
}

MODULE = {
    "type": "object",
    "oneOf": [
        {"additionalProperties": False, "required": ["kind", "weight"],
         "properties": {"kind": {"const": "one_dim"}, "J": NAMES, "weight": VECTOR, "label": {"type": "string"}}},
        {"additionalProperties": False, "required": ["kind", "vectors"],
         "properties": {"kind": {"const": "matrices"}, "J": NAMES, "label": {"type": "string"},
                        "reflections": {"type": "object", "additionalProperties": MATRIX},
                        "vectors": {"type": "object", "additionalProperties": MATRIX}}},
        {"additionalProperties": False, "required": ["kind", "base", "r", "eta"],
         "properties": {"kind": {"const": "chain"}, "base": {"$ref": "#/$defs/module"},
                        "r": {"type": "integer", "minimum": 1}, "eta": VECTOR}},
        {"additionalProperties": False, "required": ["kind", "base", "nu"],
         "properties": {"kind": {"const": "tensor_with_character"}, "base": {"$ref": "#/$defs/module"},
                        "nu": VECTOR}},
        {"additionalProperties": False, "required": ["kind", "U"],
         "properties": {"kind": {"const": "induce"}, "J": NAMES, "U": {"$ref": "#/$defs/module"},
                        "eta": VECTOR}},
    ],
}

PAIR = {
    "type": "object",
    "additionalProperties": False,
    "required": ["J", "U"],
    "properties": {"J": NAMES, "U": {"$ref": "#/$defs/module"}},
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ghfilt case configuration",
    "type": "object",
    "additionalProperties": False,
    "required": ["datum"],
    "properties": {
        "name": {"type": "string"},
        "datum": DATUM,
        "J": NAMES,
        "U": {"$ref": "#/$defs/module"},
        "eta": VECTOR,
        "r": {"type": "integer", "minimum": 1},
        "directions": {"type": "array", "items": VECTOR},
        "other": PAIR,
        "module": {"$ref": "#/$defs/module"},
    },
    "$defs": {"module": MODULE},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ghfilt report",
    "type": "object",
    "additionalProperties": False,
    "required": ["command", "engine_version", "config", "results", "status"],
    "properties": {
        "command": {"type": "string"},
        "engine_version": {"type": "string"},
        "config": {"type": ["object", "null"]},
        "results": {"type": ["object", "null"]},
        "status": {"enum": ["ok", "failed", "math-error"]},
        "error": {"type": "object", "additionalProperties": False, "required": ["type", "message"],
                  "properties": {"type": {"type": "string"}, "message": {"type": "string"}}},
    },
}

_config_validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
_report_validator = jsonschema.Draft202012Validator(REPORT_SCHEMA)


class SchemaError(ValueError):
    pass


def validate_config(obj) -> None:
    errors = sorted(_config_validator.iter_errors(obj), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {e.message}")


def validate_report(obj) -> None:
    errors = list(_report_validator.iter_errors(obj))
    if errors:
        raise SchemaError(f"report does not match its schema: {errors[0].message}")
