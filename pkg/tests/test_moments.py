"""Moments of X: recursion oracles, finiteness predicates, closed forms.

The closed-form skewness/kurtosis expressions are kept verbatim as
cross-check artifacts; they normalize by mu2^3 and mu2^4 rather than the
standard mu2^(3/2) and mu2^2 (and two of the negative-binomial entries do
not match any normalization).  The frozen constants here were computed
independently with exact rational arithmetic before the implementation
existed, then copied in.
"""

import math

import numpy as np
import pytest

from cpdist.alaw import ALaw
from cpdist.errors import ParameterError
from cpdist.moments import (
    closed_form_kurtosis,
    closed_form_mean_var,
    closed_form_skewness,
    finiteness,
    moment_condition,
    moment_report_dict,
    raw_moments,
    skewness_kurtosis,
)

INF = math.inf


class TestRawMomentRecursion:
    """E[X^m] from the lower-moment recursion, against frozen rational-arithmetic values."""

    def test_poisson_03(self):
        r = raw_moments(ALaw.poisson(0.3))
        assert r.raw[0] == 1.0
        assert r.raw[1] == pytest.approx(1.4285714285714286, rel=1e-14)
        assert r.raw[2] == pytest.approx(3.0444964871194379, rel=1e-13)
        assert r.raw[3] == pytest.approx(14.510608376287911, rel=1e-13)
        assert r.raw[4] == INF  # E[A^4] = 1.1001 >= 1
        assert r.mean == pytest.approx(1.4285714285714286, rel=1e-14)
        assert r.variance == pytest.approx(1.0036801605888257, rel=1e-13)
        assert r.skewness == pytest.approx(7.2535916880438787, rel=1e-12)
        assert r.kurtosis == INF

    def test_poisson_01_all_finite(self):
        r = raw_moments(ALaw.poisson(0.1))
        assert r.raw[1:] == pytest.approx(
            [1.1111111111111111, 1.3732833957553059, 2.0558306719592454, 4.1607801404898542],
            rel=1e-13,
        )
        assert r.skewness == pytest.approx(4.2912640650679798, rel=1e-12)
        assert r.kurtosis == pytest.approx(32.416131226892334, rel=1e-12)

    def test_geometric_09(self):
        r = raw_moments(ALaw.geometric(0.9))
        assert r.raw[1:] == pytest.approx(
            [1.125, 1.4464285714285714, 2.4353134110787172, 6.881783452297175], rel=1e-13
        )
        assert r.skewness == pytest.approx(5.2195093891750427, rel=1e-12)
        assert r.kurtosis == pytest.approx(64.278817733990148, rel=1e-12)

    def test_binomial_2_01(self):
        r = raw_moments(ALaw.binomial(2, 0.1))
        assert r.raw[1:] == pytest.approx(
            [1.25, 1.9230769230769231, 4.08004158004158, 13.305613305613306], rel=1e-13
        )
        assert r.skewness == pytest.approx(3.5782150693525957, rel=1e-12)
        assert r.kurtosis == pytest.approx(27.766126126126126, rel=1e-12)

    def test_negbinomial_2_095(self):
        r = raw_moments(ALaw.negbinomial(2, 0.95))
        assert r.raw[1:] == pytest.approx(
            [1.1176470588235294, 1.4067544999072184, 2.2193664555846592, 5.1654190165877826],
            rel=1e-13,
        )
        assert r.skewness == pytest.approx(4.7107579805691753, rel=1e-12)
        assert r.kurtosis == pytest.approx(44.513434738484225, rel=1e-12)

    def test_infinite_moments_never_pollute_lower_ones(self):
        # lam = 0.8: E[A^2] = 1.44 >= 1, so only the mean is finite
        r = raw_moments(ALaw.poisson(0.8))
        assert r.raw[1] == pytest.approx(1.0 / 0.2, rel=1e-14)
        assert r.raw[2] == INF and r.raw[3] == INF and r.raw[4] == INF
        assert r.variance == INF and r.skewness == INF and r.kurtosis == INF

    def test_order_validation(self):
        with pytest.raises(ParameterError):
            raw_moments(ALaw.poisson(0.3), order=0)

    def test_cumulative_condition(self):
        law = ALaw.poisson(0.3)
        assert [moment_condition(law, m) for m in (1, 2, 3, 4)] == [True, True, True, False]


class TestFiniteness:
    """Closed-form mean/variance finiteness predicates vs the cumulative E[A^m] < 1 test."""

    def test_agrees_with_cumulative_condition_on_grid(self):
        rng = np.random.default_rng(20240814)
        laws = []
        for _ in range(100):
            laws.append(ALaw.poisson(float(rng.uniform(0.01, 2.0))))
            laws.append(ALaw.binomial(int(rng.integers(1, 11)), float(rng.uniform(0.01, 0.99))))
            laws.append(ALaw.negbinomial(int(rng.integers(1, 11)), float(rng.uniform(0.05, 0.99))))
            laws.append(ALaw.geometric(float(rng.uniform(0.05, 0.99))))
        for law in laws:
            for m in (1, 2):
                assert finiteness(law, m) == moment_condition(law, m), (law, m)

    def test_poisson_boundaries(self):
        golden = (math.sqrt(5.0) - 1.0) / 2.0
        assert finiteness(ALaw.poisson(0.999), 1) and not finiteness(ALaw.poisson(1.0), 1)
        assert finiteness(ALaw.poisson(golden - 1e-9), 2)
        assert not finiteness(ALaw.poisson(golden + 1e-9), 2)

    def test_bernoulli_always_finite(self):
        for p in (0.1, 0.5, 0.999):
            assert finiteness(ALaw.binomial(1, p), 1)
            assert finiteness(ALaw.binomial(1, p), 2)

    def test_geometric_boundaries(self):
        assert not finiteness(ALaw.geometric(0.5), 1) and finiteness(ALaw.geometric(0.51), 1)
        assert not finiteness(ALaw.geometric(2.0 / 3.0), 2) and finiteness(ALaw.geometric(0.67), 2)

    def test_m_validation(self):
        with pytest.raises(ParameterError):
            finiteness(ALaw.poisson(0.3), 3)


class TestClosedFormMeanVar:
    def test_matches_recursion_where_finite(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            laws = [
                ALaw.poisson(float(rng.uniform(0.01, 0.6))),
                ALaw.binomial(int(rng.integers(1, 6)), float(rng.uniform(0.01, 0.15))),
                ALaw.negbinomial(int(rng.integers(1, 4)), float(rng.uniform(0.85, 0.99))),
                ALaw.geometric(float(rng.uniform(0.7, 0.99))),
            ]
            for law in laws:
                mean, var = closed_form_mean_var(law)
                r = raw_moments(law, order=2)
                if math.isfinite(mean):
                    assert mean == pytest.approx(r.raw[1], rel=1e-12)
                if math.isfinite(var):
                    assert var == pytest.approx(r.raw[2] - r.raw[1] ** 2, rel=1e-11)

    def test_known_values(self):
        mean, var = closed_form_mean_var(ALaw.poisson(0.3))
        assert mean == pytest.approx(1.0 / 0.7, rel=1e-15)
        assert var == pytest.approx(1.0036801605888257, rel=1e-13)
        mean, _ = closed_form_mean_var(ALaw.geometric(0.75))
        assert mean == pytest.approx(1.5, rel=1e-15)

    def test_infinite_branches(self):
        assert closed_form_mean_var(ALaw.poisson(1.5)) == (INF, INF)
        mean, var = closed_form_mean_var(ALaw.poisson(0.65))  # mean finite, var not
        assert math.isfinite(mean) and var == INF
        assert closed_form_mean_var(ALaw.geometric(0.4)) == (INF, INF)

    def test_skewness_kurtosis_wrapper(self):
        skew, kurt = skewness_kurtosis(ALaw.poisson(0.1))
        assert skew == pytest.approx(4.2912640650679798, rel=1e-12)
        assert kurt == pytest.approx(32.416131226892334, rel=1e-12)


class TestClosedFormConvention:
    """The verbatim expressions normalize by mu2^3 / mu2^4, not mu2^(3/2) / mu2^2."""

    @staticmethod
    def centrals(law):
        r = raw_moments(law)
        m1, m2, m3, m4 = r.raw[1:]
        mu2 = m2 - m1**2
        mu3 = m3 - 3 * m1 * m2 + 2 * m1**3
        mu4 = m4 - 4 * m1 * m3 + 6 * m1**2 * m2 - 3 * m1**4
        return mu2, mu3, mu4

    def test_poisson_both_reproduce_cube_and_fourth_ratios(self):
        for lam in (0.1, 0.15, 0.2):
            law = ALaw.poisson(lam)
            mu2, mu3, mu4 = self.centrals(law)
            assert closed_form_skewness(law) == pytest.approx(mu3 / mu2**3, rel=1e-10)
            assert closed_form_kurtosis(law) == pytest.approx(mu4 / mu2**4, rel=1e-10)

    def test_geometric_both_reproduce_ratios(self):
        for p in (0.9, 0.95):
            law = ALaw.geometric(p)
            mu2, mu3, mu4 = self.centrals(law)
            assert closed_form_skewness(law) == pytest.approx(mu3 / mu2**3, rel=1e-10)
            assert closed_form_kurtosis(law) == pytest.approx(mu4 / mu2**4, rel=1e-10)

    def test_binomial_skew_exact_kurtosis_misprinted(self):
        law = ALaw.binomial(2, 0.1)
        mu2, mu3, mu4 = self.centrals(law)
        assert closed_form_skewness(law) == pytest.approx(mu3 / mu2**3, rel=1e-10)
        printed = closed_form_kurtosis(law)
        assert printed == pytest.approx(213.54666303248703, rel=1e-12)  # frozen verbatim value
        true_ratio = mu4 / mu2**4
        assert true_ratio == pytest.approx(213.55976546146146, rel=1e-10)
        # close but provably different: two coefficient signs are off in the expression
        assert 1e-6 < abs(printed - true_ratio) / true_ratio < 1e-3

    def test_negbinomial_entries_structurally_wrong(self):
        law = ALaw.negbinomial(2, 0.95)
        mu2, mu3, mu4 = self.centrals(law)
        skew_printed = closed_form_skewness(law)
        kurt_printed = closed_form_kurtosis(law)
        assert skew_printed == pytest.approx(52.107831283363033, rel=1e-12)
        # the kurtosis polynomial cancels ~1e3-sized terms down to -5, so
        # float evaluation order costs a few digits against the exact value
        assert kurt_printed == pytest.approx(-5.0158795727086493, rel=1e-8)
        assert abs(skew_printed - mu3 / mu2**3) / (mu3 / mu2**3) > 0.1
        assert abs(kurt_printed - mu4 / mu2**4) / (mu4 / mu2**4) > 0.5

    def test_poisson_03_headline_values(self):
        law = ALaw.poisson(0.3)
        assert closed_form_skewness(law) == pytest.approx(7.2137335263303005, rel=1e-12)
        assert closed_form_kurtosis(law) == pytest.approx(-495.25513939832826, rel=1e-12)
        # the mechanical value is negative even though the true kurtosis is infinite
        assert raw_moments(law).kurtosis == INF


class TestReportDict:
    def test_finite_case(self):
        d = moment_report_dict(raw_moments(ALaw.poisson(0.1)))
        assert d["family"] == "poisson" and d["params"] == {"lambda": 0.1}
        assert d["mean_finite"] and d["variance_finite"]
        assert d["central"]["mu2"] == pytest.approx(0.13871549452073797, rel=1e-13)
        assert d["central"]["mu3"] == pytest.approx(0.22170357774059897, rel=1e-12)
        assert d["central"]["mu4"] == pytest.approx(0.62375082169337029, rel=1e-12)

    def test_infinite_entries_become_null_with_flags(self):
        d = moment_report_dict(raw_moments(ALaw.poisson(0.9)))
        assert d["mean_finite"] and not d["variance_finite"]
        assert d["variance"] is None and d["kurtosis"] is None
        assert d["raw"][2] is None and d["raw_finite"][2] is False
        assert d["central"]["mu2"] is None
