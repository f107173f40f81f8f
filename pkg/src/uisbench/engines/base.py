"""Shared engine vocabulary: verdicts, belief reports, evidence interpretation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

from ..errors import ValidationError


class Verdict(str, enum.Enum):
    MALFUNCTION = "M"
    WORKING = "W"


class Antecedent(str, enum.Enum):
    """Which evidence pattern a rule keys on."""

    TEMP = "temp"
    PRESSURE = "pressure"
    TEMP_AND_PRESSURE = "temp_and_pressure"
    TEMP_OR_PRESSURE = "temp_or_pressure"

    def combine(self, temp_value: float, pressure_value: float) -> float:
        """Fold two per-evidence certainties: min for AND, max for OR."""
        if self is Antecedent.TEMP:
            return temp_value
        if self is Antecedent.PRESSURE:
            return pressure_value
        if self is Antecedent.TEMP_AND_PRESSURE:
            return min(temp_value, pressure_value)
        return max(temp_value, pressure_value)


# Scales a BeliefReport can carry.
SCALE_CF = "cf"
SCALE_PROBABILITY = "probability"
SCALE_POSTERIOR_WITH_PRIOR = "posterior-probability-with-prior"
SCALE_BELIEF_PAIR = "belief-pair"
SCALE_MEMBERSHIP = "membership-degree"


@dataclass(frozen=True)
class BeliefReport:
    """Engine-native belief values plus the binary verdict derived from them."""

    scale: str
    values: Mapping[str, float]
    verdict: Verdict

    def __post_init__(self):
        v = self.values
        if self.scale == SCALE_CF:
            if not -1.0 <= v["cf"] <= 1.0:
                raise ValidationError(f"cf {v['cf']!r} out of [-1, 1]", "cf")
        elif self.scale in (SCALE_PROBABILITY, SCALE_POSTERIOR_WITH_PRIOR, SCALE_MEMBERSHIP):
            for key, x in v.items():
                if key == "raw":  # unclamped regression output, intentionally unbounded
                    continue
                if not 0.0 <= x <= 1.0:
                    raise ValidationError(f"{key} {x!r} out of [0, 1]", key)
        elif self.scale == SCALE_BELIEF_PAIR:
            bw, bm = v["bel_w"], v["bel_m"]
            if not (0.0 <= bw <= 1.0 and 0.0 <= bm <= 1.0 and bw + bm <= 1.0 + 1e-12):
                raise ValidationError(f"belief pair ({bw!r}, {bm!r}) invalid", "bel")
        else:
            raise ValidationError(f"unknown scale {self.scale!r}", "scale")


@dataclass(frozen=True)
class RampInterpreter:
    """Two-anchor map from a raw reading to an evidence certainty in [0, 1].

    Fully absent at/below ``lo``, fully present at/above ``hi``, linear between.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValidationError(f"ramp lo {self.lo!r} must be < hi {self.hi!r}", "lo")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError("ramp anchors must be finite", "lo")


def ramp_eval(r: RampInterpreter, reading: float) -> float:
    if reading <= r.lo:
        return 0.0
    if reading >= r.hi:
        return 1.0
    return (reading - r.lo) / (r.hi - r.lo)


@dataclass(frozen=True)
class EvidenceRamps:
    """One ramp per evidence source."""

    temp: RampInterpreter
    pressure: RampInterpreter

    def certainties(self, temperature: float, pressure: float) -> tuple[float, float]:
        return ramp_eval(self.temp, temperature), ramp_eval(self.pressure, pressure)
