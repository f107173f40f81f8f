"""Plain-JSON configuration for the diagnostic domain.

Joint cells are keyed by a three-letter code: temperature state (n/h),
pressure state (n/h), conclusion (w/m).  The embedded defaults are the
standard domain, written as decimal literals.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .domain import (CELLS, CellLabel, ContingencyTable, GaussianSpec, ReadingModel)
from .errors import ValidationError

DEFAULT_CONFIG: dict = {
    "joint": {
        "nnw": 0.315, "nnm": 0.035,
        "nhw": 0.120, "nhm": 0.030,
        "hnw": 0.120, "hnm": 0.030,
        "hhw": 0.035, "hhm": 0.315,
    },
    "readings": {
        "normal_temperature": {"mean": 180.0, "sd": 5.0},
        "high_temperature": {"mean": 200.0, "sd": 5.0},
        "normal_pressure": {"mean": 70.0, "sd": 3.0},
        "high_pressure": {"mean": 82.0, "sd": 3.0},
    },
}


def cell_key(cell: CellLabel) -> str:
    return (("h" if cell.temp_high else "n")
            + ("h" if cell.pressure_high else "n")
            + ("m" if cell.malfunction else "w"))


def _parse_table(joint: Any) -> ContingencyTable:
    if not isinstance(joint, dict):
        raise ValidationError("joint must be an object", "joint")
    mapping = {}
    for cell in CELLS:
        key = cell_key(cell)
        if key not in joint:
            raise ValidationError(f"missing joint cell {key!r}", f"joint.{key}")
        mapping[cell] = float(joint[key])
    return ContingencyTable(mapping)


def _parse_readings(readings: Any) -> ReadingModel:
    specs = {}
    for name in ("normal_temperature", "high_temperature", "normal_pressure", "high_pressure"):
        try:
            entry = readings[name]
            specs[name] = GaussianSpec(float(entry["mean"]), float(entry["sd"]))
        except (KeyError, TypeError):
            raise ValidationError(f"missing or malformed reading spec {name!r}",
                                  f"readings.{name}") from None
    return ReadingModel(specs["normal_temperature"], specs["high_temperature"],
                        specs["normal_pressure"], specs["high_pressure"])


def domain_from_dict(config: dict) -> tuple[ContingencyTable, ReadingModel]:
    merged = {**DEFAULT_CONFIG, **(config or {})}
    return _parse_table(merged["joint"]), _parse_readings(merged["readings"])


def domain_to_dict(table: ContingencyTable, readings: ReadingModel) -> dict:
    return {
        "joint": {cell_key(c): table.joint[c] for c in CELLS},
        "readings": {
            "normal_temperature": {"mean": readings.normal_temp.mean,
                                   "sd": readings.normal_temp.sd},
            "high_temperature": {"mean": readings.high_temp.mean, "sd": readings.high_temp.sd},
            "normal_pressure": {"mean": readings.normal_pressure.mean,
                                "sd": readings.normal_pressure.sd},
            "high_pressure": {"mean": readings.high_pressure.mean,
                              "sd": readings.high_pressure.sd},
        },
    }


def load_domain_config(path: str | Path | None) -> tuple[ContingencyTable, ReadingModel]:
    """Load a config file, falling back to the embedded defaults when path is None."""
    if path is None:
        return domain_from_dict(DEFAULT_CONFIG)
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}", "config") from None
    return domain_from_dict(data)
