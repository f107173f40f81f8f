"""Replication experiment: agents build systems under every engine, then are
scored on seeded test trials, broken down by evidence type, and summarized
with a mixed-design ANOVA."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__ as _pkg_version
from .agents import AgentProfile, NoiseSpec, mixed_case_estimates, tune_iteratively
from .anova import AnovaTable, mixed_anova
from .config import domain_to_dict
from .domain import Case, ContingencyTable, ReadingModel, default_readings, default_table, sample_cases
from .engines import ENGINE_KINDS
from .errors import ValidationError

CONSISTENT = "consistent"
MIXED = "mixed"

# Accuracy and tuning-effort figures reported for the original human study,
# shown in report footers for context only.
HUMAN_REFERENCE = {
    "trials_to_tune": {"emycin": 9.5, "prospector": 19.3, "independence": 11.3,
                       "regression": 8.1, "fuzzy": 18.5, "dshafer": 10.0},
    CONSISTENT: {"emycin": 0.90, "prospector": 0.85, "independence": 0.87,
                 "regression": 0.85, "fuzzy": 0.84, "dshafer": 0.93},
    MIXED: {"emycin": 0.31, "prospector": 0.26, "independence": 0.74,
            "regression": 0.53, "fuzzy": 0.57, "dshafer": 0.60},
    "param_nt_hp": {"emycin": 0.81, "prospector": 0.80, "independence": 0.43,
                    "regression": 0.33, "fuzzy": 0.49, "dshafer": 0.50},
    "param_ht_np": {"emycin": 0.59, "prospector": 0.71, "independence": 0.40,
                    "regression": 0.37, "fuzzy": 0.35, "dshafer": 0.50},
}


def classify_trial(case: Case) -> str:
    """Mixed when exactly one evidence state is abnormal, else consistent."""
    return MIXED if case.cell.temp_high != case.cell.pressure_high else CONSISTENT


@dataclass(frozen=True)
class ReplicationConfig:
    agents_per_uis: int = 10
    test_trials: int = 30
    noise_sigma: float = 0.15
    master_seed: int = 2024
    vocabulary: tuple[str, ...] = ("simple", "and")
    engine_kinds: tuple[str, ...] = ENGINE_KINDS
    max_tune_trials: int = 200

    def __post_init__(self):
        if self.agents_per_uis < 1 or self.test_trials < 1 or self.max_tune_trials < 1:
            raise ValidationError("counts must be >= 1", "agents_per_uis")

    def to_dict(self) -> dict:
        return {"agents_per_uis": self.agents_per_uis, "test_trials": self.test_trials,
                "noise_sigma": self.noise_sigma, "master_seed": self.master_seed,
                "vocabulary": list(self.vocabulary),
                "engine_kinds": list(self.engine_kinds),
                "max_tune_trials": self.max_tune_trials}


@dataclass(frozen=True)
class SubjectResult:
    engine_kind: str
    subject: int
    correct: tuple[bool, ...]
    evidence_types: tuple[str, ...]
    trials_to_tune: int
    satisfied: bool
    mixed_estimates: tuple[float, float]  # standardized (NT/HP, HT/NP)

    def __post_init__(self):
        if len(self.correct) != len(self.evidence_types):
            raise ValidationError("correctness and evidence types must align", "correct")


def run_replication(config: ReplicationConfig,
                    table: ContingencyTable | None = None,
                    readings: ReadingModel | None = None) -> list[SubjectResult]:
    """Build, tune, and test agents_per_uis agents for every engine kind.

    Each subject index draws one shared seeded 30-case test set used across
    engines, so engine comparisons are paired; tuning streams and estimation
    noise are seeded per (engine, subject).  Fully deterministic given the
    master seed.
    """
    table = table if table is not None else default_table()
    readings = readings if readings is not None else default_readings()
    test_sets = {
        j: sample_cases(table, readings, config.test_trials,
                        np.random.default_rng((config.master_seed, 7, j)))
        for j in range(config.agents_per_uis)
    }
    results: list[SubjectResult] = []
    for ei, kind in enumerate(config.engine_kinds):
        for j in range(config.agents_per_uis):
            noise_seed = int(np.random.SeedSequence(
                (config.master_seed, 11, ei, j)).generate_state(1)[0])
            profile = AgentProfile(kind, NoiseSpec(config.noise_sigma, noise_seed),
                                   config.vocabulary)
            tune_rng = np.random.default_rng((config.master_seed, 13, ei, j))
            tuned = tune_iteratively(profile, table, readings,
                                     config.max_tune_trials, tune_rng)
            cases = test_sets[j]
            correct = tuple(
                tuned.system.infer(c.temperature, c.pressure).verdict == c.cell.verdict
                for c in cases)
            results.append(SubjectResult(
                engine_kind=kind,
                subject=j,
                correct=correct,
                evidence_types=tuple(classify_trial(c) for c in cases),
                trials_to_tune=tuned.trials_used,
                satisfied=tuned.satisfied,
                mixed_estimates=mixed_case_estimates(tuned.system, readings)))
    return results


def accuracy_breakdown(results: Sequence[SubjectResult]) -> dict[str, dict[str, float]]:
    """Mean correctness per engine for consistent and mixed trials (pooled over trials)."""
    if not results:
        raise ValidationError("results must be nonempty", "results")
    sums: dict[str, dict[str, list[int]]] = {}
    for r in results:
        per_engine = sums.setdefault(r.engine_kind, {CONSISTENT: [0, 0], MIXED: [0, 0]})
        for ok, etype in zip(r.correct, r.evidence_types):
            per_engine[etype][0] += int(ok)
            per_engine[etype][1] += 1
    return {
        kind: {etype: (hits / n if n else math.nan) for etype, (hits, n) in by_type.items()}
        for kind, by_type in sums.items()
    }


def _engine_order(results: Sequence[SubjectResult]) -> list[str]:
    return list(dict.fromkeys(r.engine_kind for r in results))


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class ReplicationReport:
    """Rendered replication outcome: tuning effort, accuracy, parameter estimates, ANOVA."""

    config: dict
    trials_to_tune: dict[str, float]
    accuracy: dict[str, dict[str, float]]
    overall_accuracy: dict[str, float]
    mixed_parameters: dict[str, dict[str, float]]
    anova: AnovaTable | None
    subjects: tuple[SubjectResult, ...]

    def to_json_dict(self) -> dict:
        return {
            "metadata": {"seed": self.config.get("master_seed"), "config": self.config,
                         "version": _pkg_version},
            "trials_to_tune": self.trials_to_tune,
            "accuracy": self.accuracy,
            "overall_accuracy": self.overall_accuracy,
            "mixed_parameters": self.mixed_parameters,
            "anova": self.anova.to_dict() if self.anova is not None else None,
            "human_reference": HUMAN_REFERENCE,
            "subjects": [
                {"engine": s.engine_kind, "subject": s.subject,
                 "correct": list(s.correct), "evidence_types": list(s.evidence_types),
                 "trials_to_tune": s.trials_to_tune, "satisfied": s.satisfied,
                 "mixed_estimates": list(s.mixed_estimates)}
                for s in self.subjects
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def csv_rows(self) -> list[dict]:
        rows = []
        for s in self.subjects:
            for t, (ok, etype) in enumerate(zip(s.correct, s.evidence_types)):
                rows.append({"engine": s.engine_kind, "subject": s.subject, "trial": t,
                             "evidence_type": etype, "correct": int(ok),
                             "trials_to_tune": s.trials_to_tune})
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["engine", "subject", "trial",
                                                 "evidence_type", "correct",
                                                 "trials_to_tune"])
        writer.writeheader()
        writer.writerows(self.csv_rows())
        return buf.getvalue()

    def render_text(self) -> str:
        engines = list(self.trials_to_tune)
        width = max(len(e) for e in engines) + 2
        out = ["REPLICATION REPORT", ""]
        out.append("Trials to tune (mean per engine):")
        for e in engines:
            out.append(f"  {e:<{width}}{self.trials_to_tune[e]:8.1f}")
        out.append("")
        out.append("Accuracy by evidence type:")
        out.append(f"  {'engine':<{width}}{'consistent':>12}{'mixed':>10}{'overall':>10}")
        for e in engines:
            acc = self.accuracy[e]
            out.append(f"  {e:<{width}}{acc[CONSISTENT]:>12.3f}{acc[MIXED]:>10.3f}"
                       f"{self.overall_accuracy[e]:>10.3f}")
        out.append("")
        out.append("Standardized mixed-case parameter estimates (0-1):")
        out.append(f"  {'engine':<{width}}{'NT/HP':>10}{'HT/NP':>10}")
        for e in engines:
            mp = self.mixed_parameters[e]
            out.append(f"  {e:<{width}}{mp['nt_hp']:>10.3f}{mp['ht_np']:>10.3f}")
        out.append("")
        if self.anova is not None:
            out.append("Mixed-design ANOVA (correctness, subjects nested in engine):")
            out.append(self.anova.render_text())
            out.append("")
        out.append("Human-study reference values (context only, not targets):")
        out.append(f"  {'engine':<{width}}{'tune':>8}{'consist.':>10}{'mixed':>8}"
                   f"{'NT/HP':>8}{'HT/NP':>8}")
        for e in engines:
            if e in HUMAN_REFERENCE["trials_to_tune"]:
                out.append(
                    f"  {e:<{width}}{HUMAN_REFERENCE['trials_to_tune'][e]:>8.1f}"
                    f"{HUMAN_REFERENCE[CONSISTENT][e]:>10.2f}"
                    f"{HUMAN_REFERENCE[MIXED][e]:>8.2f}"
                    f"{HUMAN_REFERENCE['param_nt_hp'][e]:>8.2f}"
                    f"{HUMAN_REFERENCE['param_ht_np'][e]:>8.2f}")
        return "\n".join(out)


def report(results: Sequence[SubjectResult],
           config: ReplicationConfig | None = None,
           table: ContingencyTable | None = None,
           readings: ReadingModel | None = None) -> ReplicationReport:
    """Assemble the report tables from subject results.

    The ANOVA is included when the design supports it (>= 2 subjects per
    engine); single-subject runs still get every other table.
    """
    if not results:
        raise ValidationError("results must be nonempty", "results")
    engines = _engine_order(results)
    by_engine = {e: [r for r in results if r.engine_kind == e] for e in engines}

    trials_to_tune = {e: _mean([r.trials_to_tune for r in rs]) for e, rs in by_engine.items()}
    accuracy = accuracy_breakdown(results)
    overall = {e: _mean([ok for r in rs for ok in r.correct]) for e, rs in by_engine.items()}
    mixed_parameters = {
        e: {"nt_hp": _mean([r.mixed_estimates[0] for r in rs]),
            "ht_np": _mean([r.mixed_estimates[1] for r in rs])}
        for e, rs in by_engine.items()
    }

    anova: AnovaTable | None = None
    sizes = {e: len(rs) for e, rs in by_engine.items()}
    if len(engines) >= 2 and min(sizes.values()) >= 2 and len(set(sizes.values())) == 1:
        matrix = np.array([[float(ok) for ok in r.correct] for r in results])
        anova = mixed_anova(matrix, [r.engine_kind for r in results])

    meta = config.to_dict() if config is not None else {}
    if table is not None and readings is not None:
        meta = {**meta, "domain": domain_to_dict(table, readings)}
    return ReplicationReport(
        config=meta,
        trials_to_tune=trials_to_tune,
        accuracy=accuracy,
        overall_accuracy=overall,
        mixed_parameters=mixed_parameters,
        anova=anova,
        subjects=tuple(results))
