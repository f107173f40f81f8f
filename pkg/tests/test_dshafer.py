import numpy as np
import pytest

from uisbench.engines import (DShaferSystem, MassFunction2, SupportFunction, VACUOUS,
                              Verdict, ds_combine, ds_support_from_reading)
from uisbench.errors import TotalConflictError, ValidationError


def temp_support():
    return SupportFunction((180.0, 185.0, 190.0, 195.0, 200.0))


def pressure_support():
    return SupportFunction((70.0, 73.0, 76.0, 79.0, 82.0))


def support_m(s: float) -> MassFunction2:
    return MassFunction2(0.0, s, 1.0 - s)


def support_w(s: float) -> MassFunction2:
    return MassFunction2(s, 0.0, 1.0 - s)


class TestSupportFromReading:
    def test_neutral_anchor_is_vacuous(self):
        m = ds_support_from_reading(temp_support(), 190.0)
        assert m == MassFunction2(0.0, 0.0, 1.0)

    def test_extreme_anchor(self):
        m = ds_support_from_reading(temp_support(), 200.0)
        assert m.m_m == pytest.approx(0.999)

    def test_interpolation_between_upper_anchors(self):
        m = ds_support_from_reading(temp_support(), 197.5)
        assert m.m_m == pytest.approx((0.5 + 0.999) / 2.0, abs=1e-12)

    def test_clamped_outside_range(self):
        assert ds_support_from_reading(temp_support(), 500.0).m_m == pytest.approx(0.999)
        assert ds_support_from_reading(temp_support(), -500.0).m_w == pytest.approx(0.999)

    def test_working_side(self):
        m = ds_support_from_reading(temp_support(), 182.5)
        assert m.m_w == pytest.approx((0.999 + 0.5) / 2.0, abs=1e-12)
        assert m.m_m == 0.0

    def test_anchor_ordering_validated(self):
        with pytest.raises(ValidationError):
            SupportFunction((180.0, 185.0, 185.0, 195.0, 200.0))


class TestCombine:
    def test_vacuous_identity(self):
        m = support_m(0.4)
        assert ds_combine(VACUOUS, m) == m
        assert ds_combine(m, VACUOUS) == m

    def test_same_focus_closed_form(self):
        result = ds_combine(support_m(0.5), support_m(0.6))
        assert result.m_m == 1.0 - (1.0 - 0.5) * (1.0 - 0.6)
        assert result.m_m == pytest.approx(0.8)

    def test_same_focus_closed_form_exact_over_random_supports(self):
        rng = np.random.default_rng(5)
        for s1, s2 in rng.uniform(0.0, 0.999, size=(2000, 2)):
            result = ds_combine(support_m(s1), support_m(s2))
            assert result.m_m == 1.0 - (1.0 - s1) * (1.0 - s2)

    def test_conflicting_supports(self):
        result = ds_combine(support_m(0.5), support_w(0.6))
        assert result.m_m == pytest.approx(0.2 / 0.7, abs=1e-12)
        assert result.m_w == pytest.approx(0.3 / 0.7, abs=1e-12)
        assert result.m_theta == pytest.approx(0.2 / 0.7, abs=1e-12)

    def test_total_conflict(self):
        with pytest.raises(TotalConflictError):
            ds_combine(support_m(1.0), support_w(1.0))

    def _random_masses(self, rng, n):
        raw = rng.dirichlet((1.0, 1.0, 1.0), size=n)
        return [MassFunction2(*map(float, row)) for row in raw]

    def test_commutative(self):
        rng = np.random.default_rng(21)
        for m1, m2 in zip(self._random_masses(rng, 3000), self._random_masses(rng, 3000)):
            try:
                a, b = ds_combine(m1, m2), ds_combine(m2, m1)
            except TotalConflictError:
                continue
            assert abs(a.m_w - b.m_w) <= 1e-12
            assert abs(a.m_m - b.m_m) <= 1e-12
            assert abs(a.m_theta - b.m_theta) <= 1e-12

    def test_associative(self):
        rng = np.random.default_rng(22)
        ms = self._random_masses(rng, 3000)
        for m1, m2, m3 in zip(ms[0::3], ms[1::3], ms[2::3]):
            try:
                left = ds_combine(ds_combine(m1, m2), m3)
                right = ds_combine(m1, ds_combine(m2, m3))
            except TotalConflictError:
                continue
            assert abs(left.m_w - right.m_w) <= 1e-12
            assert abs(left.m_m - right.m_m) <= 1e-12
            assert abs(left.m_theta - right.m_theta) <= 1e-12

    def test_mass_invariants_validated(self):
        with pytest.raises(ValidationError):
            MassFunction2(0.5, 0.6, 0.2)
        with pytest.raises(ValidationError):
            MassFunction2(-0.1, 0.6, 0.5)


class TestInfer:
    def test_both_vacuous_ties_to_working(self):
        system = DShaferSystem(temp_support(), pressure_support())
        report = system.infer(190.0, 76.0)
        assert report.values == {"bel_w": 0.0, "bel_m": 0.0}
        assert report.verdict is Verdict.WORKING

    def test_agreeing_supports(self):
        system = DShaferSystem(temp_support(), pressure_support())
        # temp at 195 -> Bel(M)=0.5; pressure at 80.5 -> Bel(M)=0.7495
        report = system.infer(195.0, 80.5)
        assert report.values["bel_m"] == pytest.approx(1.0 - 0.5 * (1.0 - 0.7495), abs=1e-9)
        assert report.verdict is Verdict.MALFUNCTION

    def test_conflicting_supports_working_wins(self):
        system = DShaferSystem(temp_support(), pressure_support())
        # temp at 195 supports M 0.5; pressure at 71.5 supports W ~0.75
        report = system.infer(195.0, 71.5)
        assert report.values["bel_w"] > report.values["bel_m"]
        assert report.verdict is Verdict.WORKING

    def test_spec_conflict_numbers(self):
        # temp anchored to give exactly 0.5 support for M, pressure 0.6 for W
        temp = SupportFunction((0.0, 1.0, 2.0, 3.0, 4.0))
        pressure = SupportFunction((0.0, 1.0, 2.0, 3.0, 4.0))
        system = DShaferSystem(temp, pressure)
        # pressure reading interpolated on [r1, r2] so Bel(W) lands exactly on 0.6
        report = system.infer(3.0, (0.999 - 0.6) / (0.999 - 0.5))
        assert report.values["bel_m"] == pytest.approx(0.2 / 0.7, abs=1e-9)
        assert report.values["bel_w"] == pytest.approx(0.3 / 0.7, abs=1e-9)
        assert report.verdict is Verdict.WORKING
