"""Certainty-factor engine: CF rules combined by the parallel evidence formula."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import CombinationError, ValidationError
from .base import Antecedent, BeliefReport, EvidenceRamps, SCALE_CF, Verdict


@dataclass(frozen=True)
class EmycinRule:
    antecedent: Antecedent
    cf: float

    def __post_init__(self):
        if not (-1.0 <= self.cf <= 1.0) or not math.isfinite(self.cf):
            raise ValidationError(f"rule cf {self.cf!r} out of [-1, 1]", "cf")


def emycin_combine(x: float, y: float) -> float:
    """Parallel combination of two certainty factors.

    Same-sign operands reinforce (x + y -/+ xy); mixed signs partially cancel
    via (x + y) / (1 - min(|x|, |y|)).  The (1, -1) pair is undefined.
    """
    if not (-1.0 <= x <= 1.0 and -1.0 <= y <= 1.0):
        raise ValidationError(f"certainty factors ({x!r}, {y!r}) out of [-1, 1]", "cf")
    if x >= 0.0 and y >= 0.0:
        return x + y * (1.0 - x)   # x + y - xy, with absorption at 1 exact
    if x <= 0.0 and y <= 0.0:
        return x + y * (1.0 + x)   # x + y + xy, with absorption at -1 exact
    denom = 1.0 - min(abs(x), abs(y))
    if denom == 0.0:
        raise CombinationError("combination of certain belief with certain disbelief is undefined")
    return (x + y) / denom


@dataclass(frozen=True)
class EmycinSystem:
    """A rule list over ramp-interpreted evidence; verdict M on positive belief.

    ``activation_threshold`` gates rule firing on the antecedent CF; the
    default 0 applies no extra cutoff.
    """

    rules: tuple[EmycinRule, ...]
    ramps: EvidenceRamps
    activation_threshold: float = 0.0

    kind = "emycin"

    def __post_init__(self):
        if not self.rules:
            raise ValidationError("at least one rule is required", "rules")
        if not (0.0 <= self.activation_threshold < 1.0):
            raise ValidationError("activation_threshold out of [0, 1)", "activation_threshold")

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        ct, cp = self.ramps.certainties(temperature, pressure)
        cf_t, cf_p = 2.0 * ct - 1.0, 2.0 * cp - 1.0
        total = 0.0
        for rule in self.rules:
            ante = rule.antecedent.combine(cf_t, cf_p)
            if ante <= self.activation_threshold:
                continue
            total = emycin_combine(total, rule.cf * ante)
        verdict = Verdict.MALFUNCTION if total > 0.0 else Verdict.WORKING
        return BeliefReport(SCALE_CF, {"cf": total}, verdict)
