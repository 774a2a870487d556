"""Python front end for the gapchannel simulations."""

import json

from . import _core
from ._core import (
    ConfigError,
    ParameterError,
    RegimeError,
    StabilityError,
    format_csv,
    master_coefficients,
    oscillation_frequency,
    preset_configs,
    preset_names,
    verify,
)

__version__ = _core.version()


def run(config_text, desk=False):
    """Run one experiment; returns {"metadata": dict, "columns": list, "rows": list}."""
    meta, columns, rows = _core.run_config(config_text, desk)
    return {"metadata": json.loads(meta), "columns": list(columns), "rows": [list(r) for r in rows]}


def column(result, name):
    i = result["columns"].index(name)
    return [row[i] for row in result["rows"]]


__all__ = [
    "ConfigError",
    "ParameterError",
    "RegimeError",
    "StabilityError",
    "column",
    "format_csv",
    "master_coefficients",
    "oscillation_frequency",
    "preset_configs",
    "preset_names",
    "run",
    "verify",
]
