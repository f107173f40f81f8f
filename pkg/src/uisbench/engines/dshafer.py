"""Belief-function engine: simple support from readings, Dempster combination."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import TotalConflictError, ValidationError
from .base import BeliefReport, SCALE_BELIEF_PAIR, Verdict

# Belief pairs (Bel(working), Bel(malfunction)) pinned to the five anchors.
ANCHOR_BELIEFS: tuple[tuple[float, float], ...] = (
    (0.999, 0.0),
    (0.5, 0.0),
    (0.0, 0.0),
    (0.0, 0.5),
    (0.0, 0.999),
)


@dataclass(frozen=True)
class MassFunction2:
    """Mass over {working}, {malfunction}, and the whole two-hypothesis frame."""

    m_w: float
    m_m: float
    m_theta: float

    def __post_init__(self):
        for name in ("m_w", "m_m", "m_theta"):
            if getattr(self, name) < 0.0:
                raise ValidationError(f"{name} is negative", name)
        total = self.m_w + self.m_m + self.m_theta
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"masses sum to {total!r}, not 1", "m_theta")


VACUOUS = MassFunction2(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SupportFunction:
    """Five increasing reading anchors mapped onto the fixed belief pairs.

    Low readings support working, high readings support malfunction; belief
    pairs are interpolated linearly between neighbouring anchors and clamped
    to the extreme pairs outside them.
    """

    anchors: tuple[float, float, float, float, float]

    def __post_init__(self):
        if len(self.anchors) != 5:
            raise ValidationError("exactly five anchors are required", "anchors")
        for i, a in enumerate(self.anchors):
            if not math.isfinite(a):
                raise ValidationError("anchors must be finite", f"anchors[{i}]")
        if not all(a < b for a, b in zip(self.anchors, self.anchors[1:])):
            raise ValidationError("anchors must be strictly increasing", "anchors")


def ds_support_from_reading(f: SupportFunction, reading: float) -> MassFunction2:
    """Interpolated belief pair at a reading, as a simple support mass function."""
    anchors = f.anchors
    if reading <= anchors[0]:
        bel_w, bel_m = ANCHOR_BELIEFS[0]
    elif reading >= anchors[-1]:
        bel_w, bel_m = ANCHOR_BELIEFS[-1]
    else:
        for i in range(4):
            if reading <= anchors[i + 1]:
                frac = (reading - anchors[i]) / (anchors[i + 1] - anchors[i])
                w0, m0 = ANCHOR_BELIEFS[i]
                w1, m1 = ANCHOR_BELIEFS[i + 1]
                bel_w = w0 + (w1 - w0) * frac
                bel_m = m0 + (m1 - m0) * frac
                break
    if bel_m > 0.0:
        return MassFunction2(0.0, bel_m, 1.0 - bel_m)
    if bel_w > 0.0:
        return MassFunction2(bel_w, 0.0, 1.0 - bel_w)
    return VACUOUS


def ds_combine(m1: MassFunction2, m2: MassFunction2) -> MassFunction2:
    """Dempster's rule over the two-hypothesis frame.

    The singleton masses are computed as (1 - m_other)(1 - m_other') minus the
    frame product, which is algebraically the usual sum over intersecting focal
    pairs but keeps two agreeing simple supports bit-exact against the
    1 - (1-s1)(1-s2) closed form.
    """
    if m1.m_theta == 1.0:
        return m2
    if m2.m_theta == 1.0:
        return m1
    conflict = m1.m_w * m2.m_m + m1.m_m * m2.m_w
    norm = 1.0 - conflict
    if norm <= 0.0:
        raise TotalConflictError("mass functions are in total conflict")
    theta_product = m1.m_theta * m2.m_theta
    m_w = max(0.0, ((1.0 - m1.m_m) * (1.0 - m2.m_m) - theta_product) / norm)
    m_m = max(0.0, ((1.0 - m1.m_w) * (1.0 - m2.m_w) - theta_product) / norm)
    return MassFunction2(m_w, m_m, theta_product / norm)


@dataclass(frozen=True)
class DShaferSystem:
    temp_support: SupportFunction
    pressure_support: SupportFunction

    kind = "dshafer"

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        combined = ds_combine(
            ds_support_from_reading(self.temp_support, temperature),
            ds_support_from_reading(self.pressure_support, pressure),
        )
        verdict = Verdict.MALFUNCTION if combined.m_m > combined.m_w else Verdict.WORKING
        return BeliefReport(SCALE_BELIEF_PAIR,
                            {"bel_w": combined.m_w, "bel_m": combined.m_m}, verdict)
