"""Probability-parameter engines: evidence-independence mixture and linear regression."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ValidationError
from .base import BeliefReport, EvidenceRamps, SCALE_PROBABILITY, Verdict


def _check_prob(value: float, name: str) -> None:
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise ValidationError(f"{name} {value!r} out of [0, 1]", name)


@dataclass(frozen=True)
class IndependenceParams:
    """The four conditional malfunction probabilities, one per evidence pattern."""

    p_nn: float
    p_nh: float
    p_hn: float
    p_hh: float

    def __post_init__(self):
        for name in ("p_nn", "p_nh", "p_hn", "p_hh"):
            _check_prob(getattr(self, name), name)


def independence_mixture(params: IndependenceParams, p1: float, p2: float) -> float:
    """Expected conditional under independent evidence certainties p1, p2."""
    q1, q2 = 1.0 - p1, 1.0 - p2
    return (q1 * q2 * params.p_nn + q1 * p2 * params.p_nh
            + p1 * q2 * params.p_hn + p1 * p2 * params.p_hh)


@dataclass(frozen=True)
class IndependenceSystem:
    params: IndependenceParams
    ramps: EvidenceRamps

    kind = "independence"

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        p1, p2 = self.ramps.certainties(temperature, pressure)
        prob = independence_mixture(self.params, p1, p2)
        verdict = Verdict.MALFUNCTION if prob >= 0.5 else Verdict.WORKING
        return BeliefReport(SCALE_PROBABILITY, {"probability": prob}, verdict)


@dataclass(frozen=True)
class RegressionParams:
    """Linear model: intercept plus one weight per evidence certainty."""

    a: float
    b1: float
    b2: float

    def __post_init__(self):
        _check_prob(self.a, "a")
        for name in ("b1", "b2"):
            v = getattr(self, name)
            if not (-1.0 <= v <= 1.0) or not math.isfinite(v):
                raise ValidationError(f"{name} {v!r} out of [-1, 1]", name)


@dataclass(frozen=True)
class RegressionSystem:
    params: RegressionParams
    ramps: EvidenceRamps

    kind = "regression"

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        p1, p2 = self.ramps.certainties(temperature, pressure)
        raw = self.params.a + self.params.b1 * p1 + self.params.b2 * p2
        clamped = min(1.0, max(0.0, raw))
        verdict = Verdict.MALFUNCTION if clamped >= 0.5 else Verdict.WORKING
        return BeliefReport(SCALE_PROBABILITY, {"probability": clamped, "raw": raw}, verdict)
