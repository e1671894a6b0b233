import math

import numpy as np
import pytest
import scipy.special
import scipy.stats

from dci.errors import DegenerateInputError
from dci.stats import (ALPHAS, accuracy, paired_ttest,
                       regularized_incomplete_beta, t_cdf, two_tailed_p)


class TestAccuracy:
    def test_basic(self):
        assert accuracy([1, -1, 1, 1], [1, -1, -1, 1]) == 0.75
        assert accuracy([1], [1]) == 1.0
        assert accuracy([1], [-1]) == 0.0

    def test_errors(self):
        with pytest.raises(ValueError):
            accuracy([1, 1], [1])
        with pytest.raises(ValueError):
            accuracy([], [])
        with pytest.raises(ValueError):
            accuracy(np.ones((2, 2)), np.ones((2, 2)))


class TestIncompleteBeta:
    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (2.5, 0.5), (1.0, 3.0),
                                     (15.0, 0.5), (4.0, 7.5)])
    def test_matches_scipy(self, a, b):
        for x in np.linspace(0.0, 1.0, 41):
            ours = regularized_incomplete_beta(a, b, float(x))
            ref = scipy.special.betainc(a, b, float(x))
            np.testing.assert_allclose(ours, ref, rtol=0, atol=1e-12)

    def test_exact_endpoints(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, 1.0, 1.5)


class TestTCdf:
    @pytest.mark.parametrize("df", [1, 2, 5, 10, 30, 99])
    def test_matches_scipy(self, df):
        for t in np.linspace(-6.0, 6.0, 25):
            np.testing.assert_allclose(t_cdf(float(t), df),
                                       scipy.stats.t.cdf(t, df),
                                       rtol=0, atol=1e-12)

    @pytest.mark.parametrize("df", [1, 5, 30])
    def test_zero_is_exactly_half(self, df):
        assert t_cdf(0.0, df) == 0.5

    @pytest.mark.parametrize("df", [1, 4, 25])
    def test_symmetry(self, df):
        for t in (0.3, 1.7, 4.2):
            np.testing.assert_allclose(t_cdf(-t, df), 1.0 - t_cdf(t, df),
                                       rtol=0, atol=1e-15)

    def test_monotone_in_t(self):
        values = [t_cdf(t, 7) for t in np.linspace(-8, 8, 60)]
        assert all(u < v for u, v in zip(values, values[1:]))

    def test_bad_df(self):
        with pytest.raises(ValueError):
            t_cdf(1.0, 0)


class TestTwoTailedP:
    @pytest.mark.parametrize("df", [1, 5, 19, 60])
    def test_matches_survival_function(self, df):
        for t in (0.1, 0.9, 2.3, 5.5, -3.1):
            ref = 2.0 * scipy.stats.t.sf(abs(t), df)
            np.testing.assert_allclose(two_tailed_p(t, df), ref,
                                       rtol=0, atol=1e-12)

    def test_zero_t_gives_one(self):
        assert two_tailed_p(0.0, 9) == 1.0

    def test_large_t_stays_in_range(self):
        p = two_tailed_p(40.0, 5)
        assert 0.0 <= p < 1e-6


class TestPairedTTest:
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_reference_on_random_pairs(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 30))
        a = rng.normal(loc=0.7, scale=0.1, size=n)
        b = a + rng.normal(loc=0.02, scale=0.05, size=n)
        result = paired_ttest(a, b)
        ref = scipy.stats.ttest_rel(a, b)
        np.testing.assert_allclose(result.t_statistic, ref.statistic,
                                   rtol=0, atol=1e-9)
        np.testing.assert_allclose(result.p_value, ref.pvalue,
                                   rtol=0, atol=1e-9)
        assert result.degrees_of_freedom == n - 1

    def test_shift_invariance(self):
        a = np.array([0.1, 0.4, 0.3, 0.8, 0.6])
        b = np.array([0.2, 0.3, 0.1, 0.9, 0.2])
        r1 = paired_ttest(a, b)
        r2 = paired_ttest(a + 5.0, b + 5.0)
        np.testing.assert_allclose(r1.t_statistic, r2.t_statistic,
                                   rtol=0, atol=1e-12)

    def test_sign_flip(self):
        a = np.array([0.5, 0.7, 0.9, 0.65])
        b = np.array([0.4, 0.5, 0.8, 0.6])
        fwd = paired_ttest(a, b)
        rev = paired_ttest(b, a)
        np.testing.assert_allclose(rev.t_statistic, -fwd.t_statistic,
                                   rtol=0, atol=1e-12)
        np.testing.assert_allclose(rev.p_value, fwd.p_value, rtol=0, atol=1e-12)

    def test_significance_map(self):
        assert ALPHAS == (0.05, 0.01, 0.005)
        a = np.array([0.9, 0.92, 0.91, 0.93, 0.9, 0.94])
        b = a - 0.3 + np.linspace(0, 0.01, 6)
        result = paired_ttest(a, b)
        assert set(result.significant_at) == set(ALPHAS)
        for alpha in ALPHAS:
            assert result.significant_at[alpha] == (result.p_value < alpha)
        assert result.significant_at[0.05] is True

    def test_zero_variance_differences(self):
        # dyadic values keep every pairwise difference exactly 0.25
        a = np.array([0.25, 0.5, 0.75])
        with pytest.raises(DegenerateInputError):
            paired_ttest(a, a - 0.25)
        with pytest.raises(DegenerateInputError):
            paired_ttest(a, a)

    def test_bad_shapes(self):
        with pytest.raises(ValueError):
            paired_ttest([0.1, 0.2], [0.3])
        with pytest.raises(ValueError):
            paired_ttest([0.1], [0.3])
