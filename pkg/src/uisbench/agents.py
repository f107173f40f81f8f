"""Synthetic system-building agents.

Each agent stands in for a human participant: it translates its (optionally
noisy) knowledge of the domain into one engine's parameters, then refines the
system, either by deterministic coordinate descent against a validation set or
by the probe-and-adjust loop of the interactive protocol.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .domain import (Case, CellLabel, ContingencyTable, ReadingModel, exact_posterior,
                     sample_case, sample_cases)
from .engines import (Antecedent, BeliefReport, DShaferSystem, EmycinRule, EmycinSystem,
                      EvidenceRamps, FuzzyMembership, FuzzyRule, FuzzySystem,
                      IndependenceParams, IndependenceSystem, ProspectorRule,
                      ProspectorSystem, RampInterpreter, RegressionParams,
                      RegressionSystem, RuleConsistencyWarning, SupportFunction,
                      UisSystem, Verdict)
from .errors import DegenerateTableError, UisError, ValidationError

RULE_BASED_KINDS = ("emycin", "prospector", "fuzzy")

# Probe-and-adjust loop stops after this many consecutive agreeing probes.
SATISFACTION_STREAK = 5

# Grid used both for coordinate-descent scans and for single adjustment steps.
GRID_POINTS = 21
SEARCH_SWEEPS = 3

# Size of the seeded evaluation set used for TuneResult.final_accuracy.
FINAL_EVAL_N = 2000


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian estimation error applied to probability estimates."""

    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValidationError("sigma must be >= 0", "sigma")


@dataclass(frozen=True)
class AgentProfile:
    engine_kind: str
    noise: NoiseSpec = NoiseSpec()
    vocabulary: tuple[str, ...] = ("simple", "and")

    def __post_init__(self):
        if self.engine_kind in RULE_BASED_KINDS and not self.vocabulary:
            raise ValidationError("rule-based engines need a nonempty vocabulary", "vocabulary")
        for item in self.vocabulary:
            if item not in ("simple", "and", "or"):
                raise ValidationError(f"unknown vocabulary item {item!r}", "vocabulary")


@dataclass(frozen=True)
class TuneResult:
    system: UisSystem
    trials_used: int
    satisfied: bool
    final_accuracy: float


class _Estimator:
    """Draws noisy probability estimates in a fixed order; identity at sigma 0."""

    def __init__(self, noise: NoiseSpec):
        self.sigma = noise.sigma
        self.rng = np.random.default_rng(noise.seed)

    def __call__(self, p: float) -> float:
        if self.sigma == 0.0:
            return p
        return float(min(0.99, max(0.01, p + self.rng.normal(0.0, self.sigma))))


def _event_matches(cell: CellLabel, antecedent: Antecedent) -> bool:
    if antecedent is Antecedent.TEMP:
        return cell.temp_high
    if antecedent is Antecedent.PRESSURE:
        return cell.pressure_high
    if antecedent is Antecedent.TEMP_AND_PRESSURE:
        return cell.temp_high and cell.pressure_high
    return cell.temp_high or cell.pressure_high


def _event_probability(table: ContingencyTable, antecedent: Antecedent,
                       malfunction: bool | None = None) -> float:
    return math.fsum(
        p for cell, p in table.joint.items()
        if _event_matches(cell, antecedent)
        and (malfunction is None or cell.malfunction == malfunction))


def _conditional(numerator: float, denominator: float, what: str) -> float:
    if denominator <= 0.0:
        raise DegenerateTableError(f"{what} conditions on a zero-probability event")
    return numerator / denominator


def _antecedents(vocabulary: Sequence[str], allow_or: bool = True) -> list[Antecedent]:
    out: list[Antecedent] = []
    if "simple" in vocabulary:
        out += [Antecedent.TEMP, Antecedent.PRESSURE]
    if "and" in vocabulary:
        out.append(Antecedent.TEMP_AND_PRESSURE)
    if "or" in vocabulary and allow_or:
        out.append(Antecedent.TEMP_OR_PRESSURE)
    if not out:
        raise ValidationError("vocabulary admits no rules for this engine", "vocabulary")
    return out


def honest_ramps(readings: ReadingModel) -> EvidenceRamps:
    """Ramps anchored one standard deviation inside each reading distribution."""
    return EvidenceRamps(
        temp=RampInterpreter(readings.normal_temp.mean + readings.normal_temp.sd,
                             readings.high_temp.mean - readings.high_temp.sd),
        pressure=RampInterpreter(
            readings.normal_pressure.mean + readings.normal_pressure.sd,
            readings.high_pressure.mean - readings.high_pressure.sd),
    )


def _honest_membership(normal, high) -> FuzzyMembership:
    return FuzzyMembership(
        absent_lo=normal.mean - 4.0 * normal.sd,
        absent_hi=normal.mean + normal.sd,
        present_lo=high.mean - high.sd,
        present_hi=high.mean + 4.0 * high.sd,
        uncertain1_lo=normal.mean + normal.sd,
        uncertain1_hi=high.mean - high.sd,
        uncertain2_lo=high.mean + 4.0 * high.sd,
        uncertain2_hi=high.mean + 5.0 * high.sd,
    )


def _honest_anchors(normal, high) -> SupportFunction:
    mid = 0.5 * (normal.mean + high.mean)
    return SupportFunction((normal.mean, normal.mean + normal.sd, mid,
                            high.mean - high.sd, high.mean))


def honest_parameters(profile: AgentProfile, table: ContingencyTable,
                      readings: ReadingModel) -> UisSystem:
    """Translate the domain's true conditionals into one engine's parameters.

    Estimation noise, when configured, perturbs every probability estimate
    before it is mapped onto the engine's native scale; reading-scale anchors
    are placed at fixed reading-model quantiles.
    """
    est = _Estimator(profile.noise)
    kind = profile.engine_kind
    ramps = honest_ramps(readings) if kind not in ("fuzzy", "dshafer") else None

    if kind == "independence":
        return IndependenceSystem(IndependenceParams(
            est(table.conditional_malfunction(False, False)),
            est(table.conditional_malfunction(False, True)),
            est(table.conditional_malfunction(True, False)),
            est(table.conditional_malfunction(True, True))), ramps)

    if kind == "regression":
        a = est(table.conditional_malfunction(False, False))
        p_c_t = est(_conditional(_event_probability(table, Antecedent.TEMP, True),
                                 _event_probability(table, Antecedent.TEMP), "P(C|temp high)"))
        p_c_p = est(_conditional(_event_probability(table, Antecedent.PRESSURE, True),
                                 _event_probability(table, Antecedent.PRESSURE),
                                 "P(C|pressure high)"))
        clamp = lambda v: min(1.0, max(-1.0, v))
        return RegressionSystem(RegressionParams(a, clamp(p_c_t - a), clamp(p_c_p - a)), ramps)

    if kind == "emycin":
        p_c = est(table.marginal(malfunction=True))
        if p_c <= 0.0 or p_c >= 1.0:
            raise DegenerateTableError("conclusion prior of 0 or 1 admits no CF translation")
        rules = []
        for ante in _antecedents(profile.vocabulary):
            p_a = _event_probability(table, ante)
            p_ca = est(_conditional(_event_probability(table, ante, True), p_a, "P(C|A)"))
            if p_ca >= p_c:
                cf = (p_ca - p_c) / (1.0 - p_c)
            else:
                cf = (p_ca - p_c) / p_c
            rules.append(EmycinRule(ante, min(1.0, max(-1.0, cf))))
        return EmycinSystem(tuple(rules), ramps)

    if kind == "prospector":
        p_c = est(table.marginal(malfunction=True))
        if p_c <= 0.0 or p_c >= 1.0:
            raise DegenerateTableError("conclusion prior of 0 or 1 admits no odds translation")
        prior_scale = _clamp_scale(math.log10(p_c / (1.0 - p_c)), 4.0)
        p_malf = table.marginal(malfunction=True)
        p_work = 1.0 - p_malf
        rules = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuleConsistencyWarning)
            for ante in _antecedents(profile.vocabulary):
                p_a = _event_probability(table, ante)
                p_a_c = est(_conditional(_event_probability(table, ante, True), p_malf,
                                         "P(A|C)"))
                p_a_nc = est(_conditional(p_a - _event_probability(table, ante, True), p_work,
                                          "P(A|~C)"))
                ls = _clamp_scale(math.log10(p_a_c / p_a_nc), 6.0)
                ln = _clamp_scale(math.log10((1.0 - p_a_c) / (1.0 - p_a_nc)), 6.0)
                pe = est(p_a)
                pe_scale = _clamp_scale(math.log10(pe / (1.0 - pe)), 4.0)
                rules.append(ProspectorRule(ante, ls, ln, pe_scale))
        return ProspectorSystem(tuple(rules), prior_scale, ramps)

    if kind == "fuzzy":
        rules = []
        for ante in _antecedents(profile.vocabulary, allow_or=False):
            p_a = _event_probability(table, ante)
            strength = est(_conditional(_event_probability(table, ante, True), p_a, "P(C|A)"))
            rules.append(FuzzyRule(ante, strength))
        return FuzzySystem(
            _honest_membership(readings.normal_temp, readings.high_temp),
            _honest_membership(readings.normal_pressure, readings.high_pressure),
            tuple(rules))

    if kind == "dshafer":
        return DShaferSystem(
            _honest_anchors(readings.normal_temp, readings.high_temp),
            _honest_anchors(readings.normal_pressure, readings.high_pressure))

    raise ValidationError(f"unknown engine kind {kind!r}", "engine_kind")


def _clamp_scale(value: float, bound: float) -> float:
    return min(bound, max(-bound, value))


def report_scalar(report: BeliefReport) -> float:
    """Map any engine-native report onto a common [0, 1] malfunction-leaning scale."""
    v = report.values
    if report.scale == "cf":
        return 0.5 * (v["cf"] + 1.0)
    if report.scale == "posterior-probability-with-prior":
        return v["posterior"]
    if report.scale == "belief-pair":
        return 0.5 * (1.0 + v["bel_m"] - v["bel_w"])
    if report.scale == "membership-degree":
        return v["degree"]
    return v["probability"]


def verdict_accuracy(system: UisSystem, cases: Sequence[Case]) -> float:
    hits = sum(1 for c in cases
               if system.infer(c.temperature, c.pressure).verdict == c.cell.verdict)
    return hits / len(cases)


def _safe_accuracy(system: UisSystem, cases: Sequence[Case]) -> float | None:
    """Accuracy, or None for systems whose calculus errors on some case
    (for example a certain-belief/certain-disbelief CF combination)."""
    try:
        return verdict_accuracy(system, cases)
    except UisError:
        return None


@dataclass(frozen=True)
class _Param:
    """One tunable coordinate: closed range plus functional get/set."""

    name: str
    lo: float
    hi: float
    get: Callable[[UisSystem], float]
    set: Callable[[UisSystem, float], UisSystem]


def _replace_rule(system, index: int, **changes):
    rules = list(system.rules)
    rules[index] = replace(rules[index], **changes)
    return replace(system, rules=tuple(rules))


def _replace_anchor(system: DShaferSystem, which: str, index: int, value: float):
    support: SupportFunction = getattr(system, which)
    anchors = list(support.anchors)
    anchors[index] = value
    return replace(system, **{which: SupportFunction(tuple(anchors))})


def parameter_space(system: UisSystem, readings: ReadingModel) -> list[_Param]:
    """The engine's tunable calculus parameters, in canonical sweep order.

    Reading-interpretation ramps and fuzzy membership anchors stay fixed at
    their honest placement; belief-function anchors are the engine's only
    parameters, so they are scanned over the reading span.
    """
    kind = system.kind
    params: list[_Param] = []
    if kind == "emycin":
        for i in range(len(system.rules)):
            params.append(_Param(f"rules[{i}].cf", -1.0, 1.0,
                                 lambda s, i=i: s.rules[i].cf,
                                 lambda s, v, i=i: _replace_rule(s, i, cf=v)))
    elif kind == "prospector":
        for i in range(len(system.rules)):
            params.append(_Param(f"rules[{i}].ls_scale", -6.0, 6.0,
                                 lambda s, i=i: s.rules[i].ls_scale,
                                 lambda s, v, i=i: _replace_rule(s, i, ls_scale=v)))
            params.append(_Param(f"rules[{i}].ln_scale", -6.0, 6.0,
                                 lambda s, i=i: s.rules[i].ln_scale,
                                 lambda s, v, i=i: _replace_rule(s, i, ln_scale=v)))
            params.append(_Param(f"rules[{i}].prior_evidence_scale", -4.0, 4.0,
                                 lambda s, i=i: s.rules[i].prior_evidence_scale,
                                 lambda s, v, i=i: _replace_rule(s, i, prior_evidence_scale=v)))
        params.append(_Param("conclusion_prior_scale", -4.0, 4.0,
                             lambda s: s.conclusion_prior_scale,
                             lambda s, v: replace(s, conclusion_prior_scale=v)))
    elif kind == "independence":
        for field in ("p_nn", "p_nh", "p_hn", "p_hh"):
            params.append(_Param(f"params.{field}", 0.0, 1.0,
                                 lambda s, f=field: getattr(s.params, f),
                                 lambda s, v, f=field: replace(s, params=replace(s.params, **{f: v}))))
    elif kind == "regression":
        params.append(_Param("params.a", 0.0, 1.0, lambda s: s.params.a,
                             lambda s, v: replace(s, params=replace(s.params, a=v))))
        for field in ("b1", "b2"):
            params.append(_Param(f"params.{field}", -1.0, 1.0,
                                 lambda s, f=field: getattr(s.params, f),
                                 lambda s, v, f=field: replace(s, params=replace(s.params, **{f: v}))))
    elif kind == "fuzzy":
        for i in range(len(system.rules)):
            params.append(_Param(f"rules[{i}].strength", 0.0, 1.0,
                                 lambda s, i=i: s.rules[i].strength,
                                 lambda s, v, i=i: _replace_rule(s, i, strength=v)))
    elif kind == "dshafer":
        spans = {
            "temp_support": (readings.normal_temp.mean - 4.0 * readings.normal_temp.sd,
                             readings.high_temp.mean + 4.0 * readings.high_temp.sd),
            "pressure_support": (
                readings.normal_pressure.mean - 4.0 * readings.normal_pressure.sd,
                readings.high_pressure.mean + 4.0 * readings.high_pressure.sd),
        }
        for which, (lo, hi) in spans.items():
            for i in range(5):
                params.append(_Param(f"{which}.anchors[{i}]", lo, hi,
                                     lambda s, w=which, i=i: getattr(s, w).anchors[i],
                                     lambda s, v, w=which, i=i: _replace_anchor(s, w, i, v)))
    else:
        raise ValidationError(f"unknown engine kind {kind!r}", "engine_kind")
    return params


def _try_set(param: _Param, system: UisSystem, value: float) -> UisSystem | None:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuleConsistencyWarning)
        try:
            return param.set(system, value)
        except ValidationError:
            return None


def tune_search(profile: AgentProfile, table: ContingencyTable, readings: ReadingModel,
                validation_n: int, rng: np.random.Generator) -> TuneResult:
    """Deterministic coordinate descent on verdict accuracy over a fixed validation set.

    Each parameter is scanned over a 21-point grid across its legal range,
    three sweeps over the parameter list; a candidate is adopted only when it
    strictly improves accuracy, so the incumbent never gets worse.
    """
    if validation_n < 100:
        raise ValidationError("validation_n must be >= 100", "validation_n")
    system = honest_parameters(profile, table, readings)
    cases = sample_cases(table, readings, validation_n, rng)
    best = verdict_accuracy(system, cases)
    evaluations = 0
    for _ in range(SEARCH_SWEEPS):
        for param in parameter_space(system, readings):
            best_value = None
            for value in np.linspace(param.lo, param.hi, GRID_POINTS):
                candidate = _try_set(param, system, float(value))
                if candidate is None:
                    continue
                evaluations += 1
                acc = _safe_accuracy(candidate, cases)
                if acc is not None and acc > best:
                    best, best_value = acc, float(value)
            if best_value is not None:
                adopted = _try_set(param, system, best_value)
                if adopted is not None:
                    system = adopted
    return TuneResult(system, evaluations, True, best)


def _noisy_belief(table: ContingencyTable, readings: ReadingModel, case: Case,
                  sigma: float, rng: np.random.Generator) -> float:
    belief = exact_posterior(table, readings, case.temperature, case.pressure)
    if sigma > 0.0:
        belief = float(min(0.99, max(0.01, belief + rng.normal(0.0, sigma))))
    return belief


def _adjust_one_parameter(system: UisSystem, readings: ReadingModel, case: Case,
                          target: float) -> UisSystem:
    """Move the single parameter whose one-step change best matches the target belief."""
    current_err = abs(report_scalar(system.infer(case.temperature, case.pressure)) - target)
    best_err, best_system = current_err, system
    for param in parameter_space(system, readings):
        step = (param.hi - param.lo) / (GRID_POINTS - 1)
        value = param.get(system)
        for delta in (-step, step):
            moved = min(param.hi, max(param.lo, value + delta))
            if moved == value:
                continue
            candidate = _try_set(param, system, moved)
            if candidate is None:
                continue
            try:
                scalar = report_scalar(candidate.infer(case.temperature, case.pressure))
            except UisError:
                continue
            err = abs(scalar - target)
            if err < best_err - 1e-15:
                best_err, best_system = err, candidate
    return best_system


def tune_iteratively(profile: AgentProfile, table: ContingencyTable,
                     readings: ReadingModel, max_trials: int,
                     rng: np.random.Generator) -> TuneResult:
    """Probe-and-adjust refinement mirroring the interactive protocol.

    Each probe compares the engine's verdict with the agent's own (noisy)
    belief about the case; a disagreement triggers a single-parameter grid
    step toward the agent's belief.  The agent is satisfied after
    SATISFACTION_STREAK consecutive agreements.
    """
    if max_trials < 1:
        raise ValidationError("max_trials must be >= 1", "max_trials")
    system = honest_parameters(profile, table, readings)
    belief_rng = np.random.default_rng((profile.noise.seed, 0x6E11EF))
    streak = 0
    trials = 0
    while trials < max_trials:
        case = sample_case(table, readings, rng)
        trials += 1
        belief = _noisy_belief(table, readings, case, profile.noise.sigma, belief_rng)
        own_verdict = Verdict.MALFUNCTION if belief >= 0.5 else Verdict.WORKING
        try:
            engine_verdict = system.infer(case.temperature, case.pressure).verdict
        except UisError:
            engine_verdict = None
        if engine_verdict == own_verdict:
            streak += 1
            if streak >= SATISFACTION_STREAK:
                break
        else:
            streak = 0
            system = _adjust_one_parameter(system, readings, case, belief)
    final_accuracy = verdict_accuracy(system, sample_cases(table, readings, FINAL_EVAL_N, rng))
    return TuneResult(system, trials, streak >= SATISFACTION_STREAK, final_accuracy)


def mixed_case_estimates(system: UisSystem, readings: ReadingModel) -> tuple[float, float]:
    """System output on the two canonical mixed patterns, standardized to [0, 1].

    Returns (normal temp / high pressure, high temp / normal pressure),
    evaluated at the reading-model means.
    """
    nt_hp = system.infer(readings.normal_temp.mean, readings.high_pressure.mean)
    ht_np = system.infer(readings.high_temp.mean, readings.normal_pressure.mean)
    return report_scalar(nt_hp), report_scalar(ht_np)
