"""Stochastic diagnostic micro-domain.

A fictitious machine is either working or malfunctioning.  Two sensor
readings (temperature, pressure) are observed; each is drawn from a
"normal" or a "high" Gaussian depending on a hidden evidence state, and
the joint distribution over (temp state, pressure state, malfunction) is
an eight-cell contingency table.  This module generates cases, computes
the exact posterior P(malfunction | readings) as an oracle, estimates the
Bayes-optimal accuracy baseline, and implements the rolling learning
criterion that gates the participant protocol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .engines.base import Verdict
from .errors import DegenerateTableError, UnrepresentableReadingError, ValidationError

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Rolling learning criterion: at least 17 correct of the last 20 trials.
CRITERION_WINDOW = 20
CRITERION_CORRECT = 17

# Hard bound on learning trials per session so the protocol always terminates.
LEARNING_TRIAL_CAP = 500


@dataclass(frozen=True)
class CellLabel:
    """One cell of the contingency table: evidence states plus outcome."""

    temp_high: bool
    pressure_high: bool
    malfunction: bool

    @property
    def verdict(self) -> Verdict:
        return Verdict.MALFUNCTION if self.malfunction else Verdict.WORKING


# Canonical cell order used for sampling and serialization.
CELLS: tuple[CellLabel, ...] = tuple(
    CellLabel(t, p, c)
    for t in (False, True)
    for p in (False, True)
    for c in (False, True)
)


@dataclass(frozen=True)
class ContingencyTable:
    """Joint distribution over the eight (temp, pressure, outcome) cells."""

    joint: Mapping[CellLabel, float]

    def __post_init__(self):
        missing = [c for c in CELLS if c not in self.joint]
        if missing or len(self.joint) != 8:
            raise ValidationError("joint must assign a probability to all 8 cells", "joint")
        for cell, p in self.joint.items():
            if not (0.0 <= p <= 1.0) or not math.isfinite(p):
                raise ValidationError(f"probability {p!r} out of [0, 1]", "joint")
        total = math.fsum(self.joint[c] for c in CELLS)
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"joint sums to {total!r}, not 1", "joint")

    def probability(self, cell: CellLabel) -> float:
        return self.joint[cell]

    def probabilities(self) -> tuple[float, ...]:
        """Cell probabilities in canonical CELLS order."""
        return tuple(self.joint[c] for c in CELLS)

    def conditional_malfunction(self, temp_high: bool, pressure_high: bool) -> float:
        """P(malfunction | evidence states).  Errors on a zero-probability event."""
        yes = self.joint[CellLabel(temp_high, pressure_high, True)]
        no = self.joint[CellLabel(temp_high, pressure_high, False)]
        if yes + no <= 0.0:
            raise DegenerateTableError(
                f"evidence state (temp_high={temp_high}, pressure_high={pressure_high}) "
                "has zero probability"
            )
        return yes / (yes + no)

    def marginal(self, *, temp_high: bool | None = None,
                 pressure_high: bool | None = None,
                 malfunction: bool | None = None) -> float:
        """Probability of the event matching every non-None field."""
        return math.fsum(
            p for cell, p in self.joint.items()
            if (temp_high is None or cell.temp_high == temp_high)
            and (pressure_high is None or cell.pressure_high == pressure_high)
            and (malfunction is None or cell.malfunction == malfunction)
        )


def default_table() -> ContingencyTable:
    """The standard eight-cell table of the diagnostic domain."""
    return ContingencyTable({
        CellLabel(False, False, False): 0.315,
        CellLabel(False, False, True): 0.035,
        CellLabel(False, True, False): 0.120,
        CellLabel(False, True, True): 0.030,
        CellLabel(True, False, False): 0.120,
        CellLabel(True, False, True): 0.030,
        CellLabel(True, True, False): 0.035,
        CellLabel(True, True, True): 0.315,
    })


@dataclass(frozen=True)
class GaussianSpec:
    mean: float
    sd: float

    def __post_init__(self):
        if not (self.sd > 0.0) or not math.isfinite(self.sd) or not math.isfinite(self.mean):
            raise ValidationError("sd must be a positive finite real", "sd")

    def log_density(self, x: float) -> float:
        z = (x - self.mean) / self.sd
        return -0.5 * (z * z) - math.log(self.sd) - _LOG_SQRT_2PI


@dataclass(frozen=True)
class ReadingModel:
    """Gaussian reading distributions for normal/high temperature and pressure."""

    normal_temp: GaussianSpec
    high_temp: GaussianSpec
    normal_pressure: GaussianSpec
    high_pressure: GaussianSpec

    def temp_spec(self, high: bool) -> GaussianSpec:
        return self.high_temp if high else self.normal_temp

    def pressure_spec(self, high: bool) -> GaussianSpec:
        return self.high_pressure if high else self.normal_pressure


def default_readings() -> ReadingModel:
    """Standard reading distributions (display units)."""
    return ReadingModel(
        normal_temp=GaussianSpec(180.0, 5.0),
        high_temp=GaussianSpec(200.0, 5.0),
        normal_pressure=GaussianSpec(70.0, 3.0),
        high_pressure=GaussianSpec(82.0, 3.0),
    )


@dataclass(frozen=True)
class Case:
    """A sampled problem: visible readings plus the hidden generating cell."""

    temperature: float
    pressure: float
    cell: CellLabel


@dataclass(frozen=True)
class TrialRecord:
    case: Case
    answer: Verdict
    correct: bool
    trial_index: int

    def __post_init__(self):
        if self.correct != (self.answer == self.cell_verdict):
            raise ValidationError("correct flag contradicts answer vs. cell", "correct")

    @property
    def cell_verdict(self) -> Verdict:
        return self.case.cell.verdict


def sample_cases(table: ContingencyTable, readings: ReadingModel, n: int,
                 rng: np.random.Generator) -> list[Case]:
    """Draw ``n`` i.i.d. cases: cell from the joint, readings from the cell's Gaussians.

    Draw order is fixed (cells, then temperatures, then pressures) so a given
    generator state always yields the same case sequence.
    """
    probs = np.asarray(table.probabilities())
    idx = rng.choice(len(CELLS), size=n, p=probs / probs.sum())
    t_mean = np.array([readings.temp_spec(c.temp_high).mean for c in CELLS])
    t_sd = np.array([readings.temp_spec(c.temp_high).sd for c in CELLS])
    p_mean = np.array([readings.pressure_spec(c.pressure_high).mean for c in CELLS])
    p_sd = np.array([readings.pressure_spec(c.pressure_high).sd for c in CELLS])
    temps = rng.normal(t_mean[idx], t_sd[idx])
    pressures = rng.normal(p_mean[idx], p_sd[idx])
    return [Case(float(t), float(p), CELLS[i]) for t, p, i in zip(temps, pressures, idx)]


def sample_case(table: ContingencyTable, readings: ReadingModel,
                rng: np.random.Generator) -> Case:
    """Draw a single case (see :func:`sample_cases`)."""
    return sample_cases(table, readings, 1, rng)[0]


def exact_posterior(table: ContingencyTable, readings: ReadingModel,
                    temperature: float, pressure: float) -> float:
    """Exact P(malfunction | temperature, pressure) under the generative model.

    Computed in log space as the density-weighted cell mixture
    sum_{cells with malfunction} joint * N_t * N_p / sum_{all cells} (same),
    so it stays in [0, 1] for any readings whose densities are representable.
    """
    if not (math.isfinite(temperature) and math.isfinite(pressure)):
        raise ValidationError("readings must be finite", "temperature/pressure")
    log_w: list[float] = []
    is_malf: list[bool] = []
    for cell in CELLS:
        p = table.joint[cell]
        if p <= 0.0:
            continue
        lw = (math.log(p)
              + readings.temp_spec(cell.temp_high).log_density(temperature)
              + readings.pressure_spec(cell.pressure_high).log_density(pressure))
        log_w.append(lw)
        is_malf.append(cell.malfunction)
    m = max(log_w, default=-math.inf)
    if m == -math.inf:
        raise UnrepresentableReadingError(
            f"densities underflow for readings ({temperature!r}, {pressure!r})"
        )
    num = math.fsum(math.exp(lw - m) for lw, mal in zip(log_w, is_malf) if mal)
    den = math.fsum(math.exp(lw - m) for lw in log_w)
    return num / den


def posterior_bulk(table: ContingencyTable, readings: ReadingModel,
                   temperatures: np.ndarray, pressures: np.ndarray) -> np.ndarray:
    """Vectorized :func:`exact_posterior` over parallel reading arrays."""
    t = np.asarray(temperatures, dtype=float)
    p = np.asarray(pressures, dtype=float)
    log_w = np.full((len(CELLS), t.size), -np.inf)
    for i, cell in enumerate(CELLS):
        jp = table.joint[cell]
        if jp <= 0.0:
            continue
        ts = readings.temp_spec(cell.temp_high)
        ps = readings.pressure_spec(cell.pressure_high)
        zt = (t - ts.mean) / ts.sd
        zp = (p - ps.mean) / ps.sd
        log_w[i] = (math.log(jp) - 0.5 * (zt * zt + zp * zp)
                    - math.log(ts.sd) - math.log(ps.sd) - 2 * _LOG_SQRT_2PI)
    m = log_w.max(axis=0)
    if np.any(np.isneginf(m)):
        raise UnrepresentableReadingError("densities underflow for some readings")
    w = np.exp(log_w - m)
    malf = np.array([c.malfunction for c in CELLS])
    return w[malf].sum(axis=0) / w.sum(axis=0)


def bayes_optimal_accuracy(table: ContingencyTable, readings: ReadingModel,
                           n: int, rng: np.random.Generator) -> float:
    """Monte Carlo accuracy of answering M exactly when the posterior is >= 0.5."""
    if n < 1:
        raise ValidationError("n must be >= 1", "n")
    probs = np.asarray(table.probabilities())
    idx = rng.choice(len(CELLS), size=n, p=probs / probs.sum())
    t_mean = np.array([readings.temp_spec(c.temp_high).mean for c in CELLS])
    t_sd = np.array([readings.temp_spec(c.temp_high).sd for c in CELLS])
    p_mean = np.array([readings.pressure_spec(c.pressure_high).mean for c in CELLS])
    p_sd = np.array([readings.pressure_spec(c.pressure_high).sd for c in CELLS])
    temps = rng.normal(t_mean[idx], t_sd[idx])
    pressures = rng.normal(p_mean[idx], p_sd[idx])
    post = posterior_bulk(table, readings, temps, pressures)
    answer_m = post >= 0.5
    truth_m = np.array([c.malfunction for c in CELLS])[idx]
    return float(np.mean(answer_m == truth_m))


def criterion_met(history: Sequence[TrialRecord]) -> bool:
    """True once the most recent CRITERION_WINDOW trials hold CRITERION_CORRECT hits."""
    if len(history) < CRITERION_WINDOW:
        return False
    recent = history[-CRITERION_WINDOW:]
    return sum(1 for r in recent if r.correct) >= CRITERION_CORRECT
