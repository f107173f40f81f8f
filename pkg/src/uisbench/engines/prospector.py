"""Odds-likelihood engine: sufficiency/necessity ratios on log10 scales."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..errors import DegeneratePriorError, ValidationError
from .base import Antecedent, BeliefReport, EvidenceRamps, SCALE_POSTERIOR_WITH_PRIOR, Verdict


class RuleConsistencyWarning(UserWarning):
    """Sufficiency and necessity ratios that push the same direction."""


def _odds(p: float) -> float:
    return p / (1.0 - p)


def _prob(odds: float) -> float:
    return odds / (1.0 + odds)


@dataclass(frozen=True)
class ProspectorRule:
    """One rule: log10 sufficiency/necessity ratios plus the evidence prior scale."""

    antecedent: Antecedent
    ls_scale: float
    ln_scale: float
    prior_evidence_scale: float

    def __post_init__(self):
        if not -6.0 <= self.ls_scale <= 6.0:
            raise ValidationError(f"ls_scale {self.ls_scale!r} out of [-6, 6]", "ls_scale")
        if not -6.0 <= self.ln_scale <= 6.0:
            raise ValidationError(f"ln_scale {self.ln_scale!r} out of [-6, 6]", "ln_scale")
        if not -4.0 <= self.prior_evidence_scale <= 4.0:
            raise ValidationError(
                f"prior_evidence_scale {self.prior_evidence_scale!r} out of [-4, 4]",
                "prior_evidence_scale")
        if self.ls_scale != 0.0 and self.ln_scale != 0.0 and (
                (self.ls_scale > 0) == (self.ln_scale > 0)):
            warnings.warn(
                "ls_scale and ln_scale share a sign; present and absent evidence "
                "then shift belief the same way",
                RuleConsistencyWarning, stacklevel=2)


def prospector_rule_posterior(rule: ProspectorRule, prior_conclusion: float,
                              evidence_certainty: float) -> float:
    """Posterior from one rule under uncertain evidence.

    Certain evidence updates the prior odds by 10**ls_scale; certain absence by
    10**ln_scale.  In between, the posterior is piecewise linear through the
    prior at the evidence's own prior probability, so an observation exactly as
    likely as expected leaves the conclusion untouched.
    """
    if not 0.0 < prior_conclusion < 1.0:
        raise DegeneratePriorError(f"prior {prior_conclusion!r} admits no odds update")
    if not 0.0 <= evidence_certainty <= 1.0:
        raise ValidationError(f"certainty {evidence_certainty!r} out of [0, 1]", "certainty")
    odds = _odds(prior_conclusion)
    p_given_e = _prob((10.0 ** rule.ls_scale) * odds)
    p_given_not_e = _prob((10.0 ** rule.ln_scale) * odds)
    pe = _prob(10.0 ** rule.prior_evidence_scale)
    if evidence_certainty <= pe:
        frac = evidence_certainty / pe
        return p_given_not_e + (prior_conclusion - p_given_not_e) * frac
    frac = (evidence_certainty - pe) / (1.0 - pe)
    return prior_conclusion + (p_given_e - prior_conclusion) * frac


@dataclass(frozen=True)
class ProspectorSystem:
    rules: tuple[ProspectorRule, ...]
    conclusion_prior_scale: float
    ramps: EvidenceRamps

    kind = "prospector"

    def __post_init__(self):
        if not self.rules:
            raise ValidationError("at least one rule is required", "rules")
        if not -4.0 <= self.conclusion_prior_scale <= 4.0:
            raise ValidationError(
                f"conclusion_prior_scale {self.conclusion_prior_scale!r} out of [-4, 4]",
                "conclusion_prior_scale")

    def infer(self, temperature: float, pressure: float) -> BeliefReport:
        ct, cp = self.ramps.certainties(temperature, pressure)
        prior_odds = 10.0 ** self.conclusion_prior_scale
        prior = _prob(prior_odds)
        odds = prior_odds
        for rule in self.rules:
            certainty = rule.antecedent.combine(ct, cp)
            p_rule = prospector_rule_posterior(rule, prior, certainty)
            odds *= _odds(p_rule) / prior_odds
        posterior = _prob(odds)
        verdict = Verdict.MALFUNCTION if posterior >= 0.5 else Verdict.WORKING
        return BeliefReport(SCALE_POSTERIOR_WITH_PRIOR,
                            {"posterior": posterior, "prior": prior}, verdict)
