import pytest

from uisbench.engines import (Antecedent, FuzzyMembership, FuzzyRule, FuzzySystem,
                              Verdict, fuzzy_membership)
from uisbench.errors import ValidationError


def high_temp_membership():
    # absent [160,185], rising [185,195], present [195,220], flat tail [220,225]
    return FuzzyMembership(
        absent_lo=160.0, absent_hi=185.0,
        present_lo=195.0, present_hi=220.0,
        uncertain1_lo=185.0, uncertain1_hi=195.0,
        uncertain2_lo=220.0, uncertain2_hi=225.0,
    )


def high_pressure_membership():
    return FuzzyMembership(
        absent_lo=58.0, absent_hi=73.0,
        present_lo=79.0, present_hi=94.0,
        uncertain1_lo=73.0, uncertain1_hi=79.0,
        uncertain2_lo=94.0, uncertain2_hi=97.0,
    )


class TestMembership:
    def test_definitely_present(self):
        assert fuzzy_membership(high_temp_membership(), 200.0) == 1.0

    def test_definitely_absent(self):
        assert fuzzy_membership(high_temp_membership(), 170.0) == 0.0

    def test_uncertain_midpoint(self):
        assert fuzzy_membership(high_temp_membership(), 190.0) == pytest.approx(0.5)

    def test_linear_inside_uncertain_interval(self):
        m = high_temp_membership()
        lo, hi = 185.0, 195.0
        for frac in (0.1, 0.25, 0.75):
            reading = lo + frac * (hi - lo)
            assert fuzzy_membership(m, reading) == pytest.approx(frac, abs=1e-12)

    def test_flat_extension_below_and_above(self):
        m = high_temp_membership()
        assert fuzzy_membership(m, 100.0) == 0.0     # nearest boundary: absent_lo
        assert fuzzy_membership(m, 500.0) == 1.0     # nearest boundary: flat tail at 1

    def test_continuity_at_breakpoints(self):
        m = high_temp_membership()
        eps = 1e-9
        for edge in (160.0, 185.0, 195.0, 220.0, 225.0):
            below = fuzzy_membership(m, edge - eps)
            at = fuzzy_membership(m, edge)
            above = fuzzy_membership(m, edge + eps)
            assert abs(below - at) < 1e-6
            assert abs(above - at) < 1e-6

    def test_overlapping_intervals_rejected(self):
        with pytest.raises(ValidationError):
            FuzzyMembership(absent_lo=160.0, absent_hi=190.0,
                            present_lo=195.0, present_hi=220.0,
                            uncertain1_lo=185.0, uncertain1_hi=195.0,
                            uncertain2_lo=220.0, uncertain2_hi=225.0)

    def test_unordered_interval_rejected(self):
        with pytest.raises(ValidationError):
            FuzzyMembership(absent_lo=185.0, absent_hi=160.0,
                            present_lo=195.0, present_hi=220.0,
                            uncertain1_lo=185.0, uncertain1_hi=195.0,
                            uncertain2_lo=220.0, uncertain2_hi=225.0)

    def test_descending_layout(self):
        # present interval on the low side: membership falls with the reading
        m = FuzzyMembership(absent_lo=20.0, absent_hi=30.0,
                            present_lo=0.0, present_hi=10.0,
                            uncertain1_lo=10.0, uncertain1_hi=20.0,
                            uncertain2_lo=30.0, uncertain2_hi=32.0)
        assert fuzzy_membership(m, 5.0) == 1.0
        assert fuzzy_membership(m, 15.0) == pytest.approx(0.5)
        assert fuzzy_membership(m, 25.0) == 0.0
        assert fuzzy_membership(m, 40.0) == 0.0


def _system(rules):
    return FuzzySystem(high_temp_membership(), high_pressure_membership(), tuple(rules))


class TestInfer:
    def test_single_certain_rule(self):
        system = _system([FuzzyRule(Antecedent.TEMP, 1.0)])
        report = system.infer(200.0, 70.0)
        assert report.values["degree"] == 1.0
        assert report.verdict is Verdict.MALFUNCTION

    def test_conjunction_uses_min(self):
        system = _system([FuzzyRule(Antecedent.TEMP_AND_PRESSURE, 0.9)])
        report = system.infer(200.0, 70.0)   # memberships (1, 0)
        assert report.values["degree"] == 0.0
        assert report.verdict is Verdict.WORKING

    def test_max_product_fold(self):
        system = _system([FuzzyRule(Antecedent.TEMP, 0.6),
                          FuzzyRule(Antecedent.TEMP_AND_PRESSURE, 0.9)])
        report = system.infer(200.0, 85.0)   # memberships (1, 1)
        assert report.values["degree"] == pytest.approx(0.9)

    def test_partial_activation_scales_strength(self):
        system = _system([FuzzyRule(Antecedent.TEMP, 0.8)])
        assert system.infer(190.0, 70.0).values["degree"] == pytest.approx(0.4)

    def test_half_degree_is_malfunction(self):
        system = _system([FuzzyRule(Antecedent.TEMP, 0.5)])
        report = system.infer(200.0, 70.0)
        assert report.values["degree"] == pytest.approx(0.5)
        assert report.verdict is Verdict.MALFUNCTION

    def test_or_rules_rejected(self):
        with pytest.raises(ValidationError):
            FuzzyRule(Antecedent.TEMP_OR_PRESSURE, 0.5)

    def test_strength_validated(self):
        with pytest.raises(ValidationError):
            FuzzyRule(Antecedent.TEMP, 1.2)

    def test_needs_rules(self):
        with pytest.raises(ValidationError):
            _system([])
