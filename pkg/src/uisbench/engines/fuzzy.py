"""Fuzzy-membership engine: piecewise-linear memberships, max-product rules."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ValidationError
from .base import Antecedent, BeliefReport, SCALE_MEMBERSHIP, Verdict


@dataclass(frozen=True)
class FuzzyMembership:
    """Eight reading anchors defining where evidence is absent, present, or uncertain.

    The membership degree is 0 on the definitely-absent interval, 1 on the
    definitely-present interval, linear across each uncertain interval between
    the definite levels adjacent to it, and flat beyond the outermost anchors.
    """

    absent_lo: float
    absent_hi: float
    present_lo: float
    present_hi: float
    uncertain1_lo: float
    uncertain1_hi: float
    uncertain2_lo: float
    uncertain2_hi: float

    def __post_init__(self):
        ivals = self._intervals()
        for name, lo, hi, _ in ivals:
            if not (lo <= hi) or not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValidationError(f"{name} interval [{lo!r}, {hi!r}] is not ordered", name)
        for i, (n1, lo1, hi1, _) in enumerate(ivals):
            for n2, lo2, hi2, _ in ivals[i + 1:]:
                if max(lo1, lo2) < min(hi1, hi2):  # interiors intersect; touching is fine
                    raise ValidationError(f"intervals {n1} and {n2} overlap", n1)

    def _intervals(self) -> list[tuple[str, float, float, float | None]]:
        """(name, lo, hi, definite level); level None marks an uncertain interval."""
        return [
            ("absent", self.absent_lo, self.absent_hi, 0.0),
            ("present", self.present_lo, self.present_hi, 1.0),
            ("uncertain1", self.uncertain1_lo, self.uncertain1_hi, None),
            ("uncertain2", self.uncertain2_lo, self.uncertain2_hi, None),
        ]


def _uncertain_levels(m: FuzzyMembership, lo: float, hi: float) -> tuple[float, float]:
    """Definite levels flanking an uncertain interval (flat if one side is open)."""
    left = right = None
    for _, d_lo, d_hi, level in m._intervals():
        if level is None:
            continue
        if d_hi <= lo and (left is None or d_hi > left[0]):
            left = (d_hi, level)
        if d_lo >= hi and (right is None or d_lo < right[0]):
            right = (d_lo, level)
    if left is None and right is None:
        return 0.0, 0.0
    l_level = left[1] if left is not None else right[1]
    r_level = right[1] if right is not None else left[1]
    return l_level, r_level


def fuzzy_membership(m: FuzzyMembership, reading: float) -> float:
    """Evaluate the piecewise-linear membership at a raw reading."""
    for _, lo, hi, level in m._intervals():
        if level is not None and lo <= reading <= hi:
            return level
    for _, lo, hi, level in m._intervals():
        if level is None and lo <= reading <= hi:
            l_level, r_level = _uncertain_levels(m, lo, hi)
            if hi == lo:
                return 0.5 * (l_level + r_level)
            return l_level + (r_level - l_level) * (reading - lo) / (hi - lo)
    # Outside every interval: flat extension from the nearest boundary.
    best: tuple[float, float, float] | None = None  # (distance, boundary, value)
    for _, lo, hi, level in m._intervals():
        for edge in (lo, hi):
            if level is None:
                l_level, r_level = _uncertain_levels(m, lo, hi)
                value = l_level if edge == lo else r_level
            else:
                value = level
            cand = (abs(reading - edge), edge, value)
            if best is None or cand[:2] < best[:2]:
                best = cand
    assert best is not None
    return best[2]


@dataclass(frozen=True)
class FuzzyRule:
    antecedent: Antecedent
    strength: float

    def __post_init__(self):
        if self.antecedent is Antecedent.TEMP_OR_PRESSURE:
            raise ValidationError("fuzzy rules are simple or conjunctive only", "antecedent")
        if not (0.0 <= self.strength <= 1.0) or not math.isfinite(self.strength):
            raise ValidationError(f"strength {self.strength!r} out of [0, 1]", "strength")


@dataclass(frozen=True)
class FuzzySystem:
    temp_membership: FuzzyMembership
    pressure_membership: FuzzyMembership
    rules: tuple[FuzzyRule, ...]

    kind = "fuzzy"

    def __post_init__(self):
        if not self.rules:
            raise ValidationError("at least one rule is required", "rules")

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        mt = fuzzy_membership(self.temp_membership, temperature)
        mp = fuzzy_membership(self.pressure_membership, pressure)
        degree = 0.0
        for rule in self.rules:
            activation = rule.antecedent.combine(mt, mp)
            degree = max(degree, activation * rule.strength)
        verdict = Verdict.MALFUNCTION if degree >= 0.5 else Verdict.WORKING
        return BeliefReport(SCALE_MEMBERSHIP, {"degree": degree}, verdict)
