"""Analysis of variance: one-way and two-factor mixed design (subjects nested in group).

F statistics only; significance lookup is intentionally out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UnbalancedDesignError, ValidationError


@dataclass(frozen=True)
class AnovaRow:
    source: str
    df: int
    ss: float
    ms: float | None = None
    f: float | None = None

    def to_dict(self) -> dict:
        return {"source": self.source, "df": self.df, "ss": self.ss,
                "ms": self.ms, "f": self.f}


@dataclass(frozen=True)
class AnovaTable:
    rows: tuple[AnovaRow, ...]

    def row(self, source: str) -> AnovaRow:
        for r in self.rows:
            if r.source == source:
                return r
        raise KeyError(source)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows]}

    def render_text(self) -> str:
        lines = [f"{'SOURCE':<22}{'DF':>6}{'SS':>12}{'MS':>12}{'F':>10}"]
        for r in self.rows:
            ms = f"{r.ms:.4f}" if r.ms is not None else ""
            f = f"{r.f:.4f}" if r.f is not None and math.isfinite(r.f) else (
                "inf" if r.f is not None and math.isinf(r.f) else "")
            lines.append(f"{r.source:<22}{r.df:>6}{r.ss:>12.4f}{ms:>12}{f:>10}")
        return "\n".join(lines)


def one_way_anova(groups: Sequence[Sequence[float]]) -> tuple[float, int, int]:
    """Between/within F test.  Zero within-group variance yields an infinite F."""
    if len(groups) < 2 or any(len(g) < 2 for g in groups):
        raise ValidationError("need >= 2 groups with >= 2 observations each", "groups")
    all_values = [float(x) for g in groups for x in g]
    grand = math.fsum(all_values) / len(all_values)
    ss_between = math.fsum(
        len(g) * (math.fsum(g) / len(g) - grand) ** 2 for g in groups)
    ss_within = math.fsum(
        (x - math.fsum(g) / len(g)) ** 2 for g in groups for x in g)
    df1 = len(groups) - 1
    df2 = len(all_values) - len(groups)
    if ss_within == 0.0:
        return math.inf, df1, df2
    return (ss_between / df1) / (ss_within / df2), df1, df2


def _ratio(num_ms: float, den_ms: float) -> float:
    if den_ms == 0.0:
        return math.inf if num_ms > 0.0 else math.nan
    return num_ms / den_ms


def mixed_anova(correctness: np.ndarray, labels: Sequence[str]) -> AnovaTable:
    """Two-factor mixed-design decomposition of a subjects x trials matrix.

    Between-subjects factor: the group label (one per subject, subjects nested
    within group).  Within-subjects factor: the trial.  Group and interaction
    effects are tested against their nested error terms.  The design must be
    balanced.
    """
    data = np.asarray(correctness, dtype=float)
    if data.ndim != 2:
        raise ValidationError("correctness must be a subjects x trials matrix", "correctness")
    n_subjects, n_trials = data.shape
    if len(labels) != n_subjects:
        raise ValidationError("one label per subject is required", "labels")
    if n_trials < 2:
        raise ValidationError("need >= 2 trials", "correctness")

    group_names = list(dict.fromkeys(labels))
    indices = {g: [i for i, lab in enumerate(labels) if lab == g] for g in group_names}
    sizes = {g: len(ix) for g, ix in indices.items()}
    n_per_group = next(iter(sizes.values()))
    if any(sz != n_per_group for sz in sizes.values()):
        raise UnbalancedDesignError(f"unequal group sizes: {sizes}")
    if n_per_group < 2:
        raise UnbalancedDesignError("need >= 2 subjects per group")
    g = len(group_names)

    grand = data.mean()
    subj_means = data.mean(axis=1)
    trial_means = data.mean(axis=0)
    group_means = np.array([data[indices[name]].mean() for name in group_names])
    group_trial_means = np.vstack([data[indices[name]].mean(axis=0) for name in group_names])

    ss_total = float(((data - grand) ** 2).sum())
    ss_between_subj = float(n_trials * ((subj_means - grand) ** 2).sum())
    ss_group = float(n_per_group * n_trials * ((group_means - grand) ** 2).sum())
    ss_subj_within = ss_between_subj - ss_group
    ss_within = ss_total - ss_between_subj
    ss_trials = float(g * n_per_group * ((trial_means - grand) ** 2).sum())
    interaction = (group_trial_means - group_means[:, None]
                   - trial_means[None, :] + grand)
    ss_interaction = float(n_per_group * (interaction ** 2).sum())
    ss_trials_subj = ss_within - ss_trials - ss_interaction

    df_group = g - 1
    df_subj = g * (n_per_group - 1)
    df_trials = n_trials - 1
    df_interaction = df_group * df_trials
    df_trials_subj = df_subj * df_trials
    df_total = n_subjects * n_trials - 1

    ms_group = ss_group / df_group
    ms_subj = ss_subj_within / df_subj
    ms_trials = ss_trials / df_trials
    ms_interaction = ss_interaction / df_interaction
    ms_trials_subj = ss_trials_subj / df_trials_subj

    rows = (
        AnovaRow("BETWEEN", n_subjects - 1, ss_between_subj),
        AnovaRow("UIS", df_group, ss_group, ms_group, _ratio(ms_group, ms_subj)),
        AnovaRow("SUBJ(UIS)", df_subj, ss_subj_within, ms_subj),
        AnovaRow("WITHIN", n_subjects * (n_trials - 1), ss_within),
        AnovaRow("TRIALS", df_trials, ss_trials, ms_trials,
                 _ratio(ms_trials, ms_trials_subj)),
        AnovaRow("UISxTRIALS", df_interaction, ss_interaction, ms_interaction,
                 _ratio(ms_interaction, ms_trials_subj)),
        AnovaRow("TRIALSxSUBJ(UIS)", df_trials_subj, ss_trials_subj, ms_trials_subj),
        AnovaRow("TOTAL", df_total, ss_total),
    )
    return AnovaTable(rows)
