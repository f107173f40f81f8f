import numpy as np
import pytest

from uisbench.engines import (Antecedent, EvidenceRamps, ProspectorRule,
                              ProspectorSystem, RampInterpreter, RuleConsistencyWarning,
                              Verdict, prospector_rule_posterior)
from uisbench.errors import DegeneratePriorError, ValidationError


def certain_ramps():
    return EvidenceRamps(RampInterpreter(0.0, 1.0), RampInterpreter(0.0, 1.0))


class TestRulePosterior:
    def test_prior_preserved_at_evidence_prior(self):
        rule = ProspectorRule(Antecedent.TEMP, 2.0, -1.0, 0.0)   # PE = 0.5
        for prior in (0.1, 0.37, 0.5, 0.9):
            assert prospector_rule_posterior(rule, prior, 0.5) == pytest.approx(
                prior, abs=1e-12)

    def test_certain_evidence_full_odds_update(self):
        # lambda_S = 100 on even prior odds: 100 / 101
        rule = ProspectorRule(Antecedent.TEMP, 2.0, 0.0, 0.0)
        post = prospector_rule_posterior(rule, 0.5, 1.0)
        assert post == pytest.approx(100.0 / 101.0, abs=1e-12)

    def test_unit_necessity_keeps_prior_on_absent_evidence(self):
        rule = ProspectorRule(Antecedent.TEMP, 2.0, 0.0, 0.0)
        assert prospector_rule_posterior(rule, 0.3, 0.0) == pytest.approx(0.3, abs=1e-12)

    def test_degenerate_prior(self):
        rule = ProspectorRule(Antecedent.TEMP, 1.0, -1.0, 0.0)
        for prior in (0.0, 1.0):
            with pytest.raises(DegeneratePriorError):
                prospector_rule_posterior(rule, prior, 0.5)

    def test_monotone_in_certainty(self):
        rng = np.random.default_rng(11)
        for _ in range(2000):
            rule = ProspectorRule(Antecedent.TEMP,
                                  rng.uniform(0.1, 6.0), rng.uniform(-6.0, -0.1),
                                  rng.uniform(-4.0, 4.0))
            prior = rng.uniform(0.01, 0.99)
            c1, c2 = sorted(rng.uniform(0.0, 1.0, 2))
            p1 = prospector_rule_posterior(rule, prior, c1)
            p2 = prospector_rule_posterior(rule, prior, c2)
            assert p1 <= p2 + 1e-12

    def test_scale_ranges_validated(self):
        with pytest.raises(ValidationError):
            ProspectorRule(Antecedent.TEMP, 6.5, 0.0, 0.0)
        with pytest.raises(ValidationError):
            ProspectorRule(Antecedent.TEMP, 0.0, -7.0, 0.0)
        with pytest.raises(ValidationError):
            ProspectorRule(Antecedent.TEMP, 0.0, 0.0, 4.5)

    def test_same_sign_scales_warn(self):
        with pytest.warns(RuleConsistencyWarning):
            ProspectorRule(Antecedent.TEMP, 2.0, 1.0, 0.0)


class TestInfer:
    def test_evidence_at_rule_priors_returns_prior(self):
        # certainty 0.5 equals each rule's evidence prior (scale 0) -> no update
        rules = (ProspectorRule(Antecedent.TEMP, 2.0, -2.0, 0.0),
                 ProspectorRule(Antecedent.PRESSURE, 1.0, -1.0, 0.0))
        system = ProspectorSystem(rules, -1.0, certain_ramps())
        report = system.infer(0.5, 0.5)
        prior = (10.0 ** -1.0) / (1.0 + 10.0 ** -1.0)
        assert report.values["posterior"] == pytest.approx(prior, abs=1e-12)
        assert report.values["prior"] == pytest.approx(prior, abs=1e-12)

    def test_single_rule_certain_evidence(self):
        system = ProspectorSystem((ProspectorRule(Antecedent.TEMP, 2.0, 0.0, 0.0),),
                                  0.0, certain_ramps())
        report = system.infer(1.0, 0.0)
        assert report.values["posterior"] == pytest.approx(100.0 / 101.0, abs=1e-12)
        assert report.verdict is Verdict.MALFUNCTION

    def test_two_rules_multiply_odds(self):
        # each rule multiplies odds by 10 at certain evidence; prior odds 0.1
        rules = (ProspectorRule(Antecedent.TEMP, 1.0, 0.0, -4.0),
                 ProspectorRule(Antecedent.PRESSURE, 1.0, 0.0, -4.0))
        system = ProspectorSystem(rules, -1.0, certain_ramps())
        report = system.infer(1.0, 1.0)
        # PE ~ 1e-4, so certainty 1 sits at the top of the interpolation: full update
        assert report.values["posterior"] == pytest.approx(10.0 / 11.0, abs=1e-4)

    def test_and_or_antecedents(self):
        and_sys = ProspectorSystem(
            (ProspectorRule(Antecedent.TEMP_AND_PRESSURE, 2.0, -2.0, 0.0),),
            0.0, certain_ramps())
        or_sys = ProspectorSystem(
            (ProspectorRule(Antecedent.TEMP_OR_PRESSURE, 2.0, -2.0, 0.0),),
            0.0, certain_ramps())
        # mixed evidence: AND uses min (0), OR uses max (1)
        assert and_sys.infer(1.0, 0.0).values["posterior"] < 0.5
        assert or_sys.infer(1.0, 0.0).values["posterior"] > 0.5

    def test_posterior_half_is_malfunction(self):
        system = ProspectorSystem((ProspectorRule(Antecedent.TEMP, 0.0, 0.0, 0.0),),
                                  0.0, certain_ramps())
        report = system.infer(1.0, 0.0)
        assert report.values["posterior"] == pytest.approx(0.5, abs=1e-12)
        assert report.verdict is Verdict.MALFUNCTION

    def test_prior_scale_validated(self):
        with pytest.raises(ValidationError):
            ProspectorSystem((ProspectorRule(Antecedent.TEMP, 1.0, 0.0, 0.0),),
                             5.0, certain_ramps())

    def test_needs_rules(self):
        with pytest.raises(ValidationError):
            ProspectorSystem((), 0.0, certain_ramps())

    def test_deterministic(self):
        system = ProspectorSystem((ProspectorRule(Antecedent.TEMP, 1.5, -1.0, 0.3),),
                                  -0.2, certain_ramps())
        assert system.infer(0.7, 0.7) == system.infer(0.7, 0.7)
