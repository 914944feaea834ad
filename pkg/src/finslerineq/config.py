"""Run configuration for the verification suite.

A run is described by a JSON document validated against CONFIG_SCHEMA
(unknown keys are rejected everywhere).  The default config path can be set
through the FINSLERINEQ_CONFIG environment variable; an explicit path always
wins.  The seed is recorded in every emitted report set so that two runs of
the same config produce byte-identical output.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

import jsonschema

from .errors import InputError

__all__ = ["SCHEMA_VERSION", "CONFIG_SCHEMA", "CaseConfig", "RunConfig",
           "load_config", "default_config_path"]

SCHEMA_VERSION = 1

CONFIG_ENV_VAR = "FINSLERINEQ_CONFIG"

_NORM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["euclidean", "weighted_lq"]},
        "q": {"type": "number", "exclusiveMinimum": 1.0},
        "weights": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0.0},
            "minItems": 2,
        },
    },
}

_CASE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["family", "N"],
    "properties": {
        "family": {"enum": ["sobolev", "gn", "nash", "logsob", "poincare",
                            "trace", "trudinger_moser"]},
        "N": {"type": "integer", "minimum": 3},
        "param": {"type": "number"},
        "R": {"type": "number", "exclusiveMinimum": 0.0},
        "profile": {"type": "string"},
        "extremal": {"type": "boolean"},
        "profile_params": {
            "type": "object",
            "additionalProperties": {"type": "number"},
        },
        "norm": _NORM_SCHEMA,
    },
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "cases"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "seed": {"type": "integer", "minimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0.0},
        "norm": _NORM_SCHEMA,
        "cases": {"type": "array", "items": _CASE_SCHEMA, "minItems": 1},
    },
}


@dataclass(frozen=True)
class CaseConfig:
    family: str
    N: int
    param: Optional[float] = None
    R: float = 1.0
    profile: str = "extremal"
    extremal: Optional[bool] = None      # default: profile == "extremal"
    profile_params: dict = field(default_factory=dict)
    norm: Optional[dict] = None          # overrides the run-level norm


@dataclass(frozen=True)
class RunConfig:
    cases: tuple
    seed: int = 0
    tol: float = 1e-8
    norm: dict = field(default_factory=lambda: {"kind": "euclidean"})
    schema_version: int = SCHEMA_VERSION


def default_config_path() -> Optional[str]:
    """Config path from the environment, or None when unset/empty."""
    return os.environ.get(CONFIG_ENV_VAR) or None


def _from_dict(doc: dict) -> RunConfig:
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(k) for k in exc.absolute_path) or "<root>"
        raise InputError(f"invalid config at {where}: {exc.message}") from exc
    cases = tuple(
        CaseConfig(
            family=c["family"],
            N=c["N"],
            param=c.get("param"),
            R=c.get("R", 1.0),
            profile=c.get("profile", "extremal"),
            extremal=c.get("extremal"),
            profile_params=dict(c.get("profile_params", {})),
            norm=c.get("norm"),
        )
        for c in doc["cases"]
    )
    return RunConfig(cases=cases, seed=doc.get("seed", 0),
                     tol=doc.get("tol", 1e-8),
                     norm=doc.get("norm", {"kind": "euclidean"}))


def load_config(path: Optional[str] = None) -> RunConfig:
    """Load and validate a run config from ``path`` (or the env default)."""
    path = path or default_config_path()
    if path is None:
        raise InputError(
            f"no config path given and {CONFIG_ENV_VAR} is not set")
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("config root must be a JSON object")
    return _from_dict(doc)
