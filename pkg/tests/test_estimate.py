import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from langexp.errors import ConvergenceError, DomainError, InsufficientDataError, UnfittableError
from langexp.estimate import (
    FitResult,
    SampleSummary,
    fit_gamma,
    goodness_variance,
    summarize,
)
from langexp.langevin import InverseTolerance, langevin
from langexp.truncexp import TruncExp, mean, sample, variance

K_MIN, K_MAX = 0.05, 0.8


def exact_summary(d, n=1000):
    return SampleSummary(n=n, k_bar=mean(d), s2=variance(d))


def log_likelihood(gamma, data, k_min, k_max):
    """Average log-likelihood of the truncated exponential, from the density."""
    if gamma == 0:
        return -math.log(k_max - k_min)
    # log(gamma / (e^{g b} - e^{g a})) + gamma * k, arranged to avoid overflow
    w = k_max - k_min
    if gamma > 0:
        log_norm = math.log(gamma) - gamma * k_max - math.log(-math.expm1(-gamma * w))
    else:
        log_norm = math.log(-gamma) - gamma * k_min - math.log(-math.expm1(gamma * w))
    return log_norm + gamma * float(np.mean(data))


class TestSummarize:
    def test_constant(self):
        s = summarize([0.4, 0.4, 0.4], K_MIN, K_MAX)
        assert (s.n, s.k_bar, s.s2, s.n_clipped) == (3, 0.4, 0.0, 0)

    def test_strict_names_value(self):
        with pytest.raises(DomainError, match="0.9"):
            summarize([0.1, 0.9], K_MIN, K_MAX)

    def test_lenient_clips(self):
        s = summarize([0.1, 0.9, 0.01], K_MIN, K_MAX, strict=False)
        assert s.n_clipped == 2
        assert s.k_bar == pytest.approx((0.1 + 0.8 + 0.05) / 3)

    def test_empty(self):
        with pytest.raises(InsufficientDataError):
            summarize([], K_MIN, K_MAX)

    def test_single(self):
        s = summarize([0.3], K_MIN, K_MAX)
        assert s.n == 1 and s.s2 == 0.0

    def test_non_finite(self):
        with pytest.raises(DomainError):
            summarize([0.3, math.nan], K_MIN, K_MAX)

    def test_streams_generators(self):
        s = summarize((0.1 * i for i in range(1, 8)), K_MIN, K_MAX)
        assert s.n == 7

    @given(st.lists(st.floats(min_value=K_MIN, max_value=K_MAX), min_size=2, max_size=200))
    def test_matches_numpy(self, data):
        s = summarize(data, K_MIN, K_MAX)
        assert s.k_bar == pytest.approx(np.mean(data), rel=1e-13, abs=1e-15)
        assert s.s2 == pytest.approx(np.var(data, ddof=1), rel=1e-9, abs=1e-15)
        assert K_MIN <= s.k_bar <= K_MAX

    def test_sample_mean(self):
        d = TruncExp(2.0, K_MIN, K_MAX)
        n = 10_000
        s = summarize(sample(d, n, seed=11), K_MIN, K_MAX)
        assert abs(s.k_bar - mean(d)) <= 4 * math.sqrt(variance(d) / n)


class TestFitGamma:
    def test_midpoint_gives_zero(self):
        alpha = 0.5 * (K_MIN + K_MAX)
        for method in ("exact", "pade"):
            fit = fit_gamma(SampleSummary(5, alpha, 0.01), K_MIN, K_MAX, method=method)
            assert fit.gamma_hat == 0.0
            assert fit.y == 0.0

    def test_round_trip_exact(self):
        fit = fit_gamma(exact_summary(TruncExp(3.0, K_MIN, K_MAX)), K_MIN, K_MAX)
        assert abs(fit.gamma_hat - 3.0) <= 1e-9
        assert fit.method == "exact"
        assert abs(langevin(fit.gamma_hat * 0.375) - fit.y) <= 1e-12

    def test_round_trip_pade(self):
        fit = fit_gamma(exact_summary(TruncExp(3.0, K_MIN, K_MAX)), K_MIN, K_MAX, method="pade")
        assert fit.gamma_hat == pytest.approx(3.0, rel=5e-3)
        assert fit.iterations == 0

    def test_fields(self):
        d = TruncExp(-4.0, K_MIN, K_MAX)
        fit = fit_gamma(exact_summary(d), K_MIN, K_MAX)
        assert fit.model_mean == pytest.approx(mean(d), rel=1e-14)
        assert fit.model_variance == pytest.approx(variance(d), rel=1e-10)
        assert fit.variance_ratio == pytest.approx(1.0, rel=1e-10)
        assert fit.distribution == TruncExp(fit.gamma_hat, K_MIN, K_MAX)

    @pytest.mark.parametrize("k_bar", [K_MIN, K_MAX, 0.9, 0.0])
    def test_unfittable(self, k_bar):
        with pytest.raises(UnfittableError, match="truncation endpoint"):
            fit_gamma(SampleSummary(3, k_bar, 0.0), K_MIN, K_MAX)

    def test_bad_method(self):
        with pytest.raises(ValueError):
            fit_gamma(SampleSummary(3, 0.4, 0.0), K_MIN, K_MAX, method="newton")

    def test_nonconvergence_propagates(self):
        with pytest.raises(ConvergenceError):
            fit_gamma(SampleSummary(3, 0.7, 0.0), K_MIN, K_MAX,
                      tol=InverseTolerance(abs_tol=1e-300, max_iter=1))

    def test_consistency_sweep(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            k_min = rng.uniform(-5, 5)
            k_max = k_min + rng.uniform(0.05, 10)
            delta = 0.5 * (k_max - k_min)
            gamma = rng.uniform(-25, 25) / delta
            fit = fit_gamma(exact_summary(TruncExp(gamma, k_min, k_max)), k_min, k_max)
            assert abs(fit.gamma_hat - gamma) <= 1e-8 * max(1.0, abs(gamma))

    def test_monotone_in_mean(self):
        grid = np.linspace(K_MIN, K_MAX, 502)[1:-1]
        gammas = [fit_gamma(SampleSummary(2, k, 0.0), K_MIN, K_MAX).gamma_hat for k in grid]
        assert np.all(np.diff(gammas) > 0)

    @pytest.mark.parametrize("c", [-3.0, 0.25, 10.0])
    def test_shift_invariance(self, c):
        base = fit_gamma(SampleSummary(4, 0.61, 0.0), K_MIN, K_MAX)
        shifted = fit_gamma(SampleSummary(4, 0.61 + c, 0.0), K_MIN + c, K_MAX + c)
        assert shifted.gamma_hat == pytest.approx(base.gamma_hat, rel=1e-12)

    @pytest.mark.parametrize("lam", [0.5, 2.0, 64.0])
    def test_scale_equivariance(self, lam):
        base = fit_gamma(SampleSummary(4, 0.61, 0.0), K_MIN, K_MAX)
        scaled = fit_gamma(SampleSummary(4, 0.61 * lam, 0.0), K_MIN * lam, K_MAX * lam)
        assert scaled.gamma_hat == pytest.approx(base.gamma_hat / lam, rel=1e-12)

    def test_pade_close_to_exact(self):
        for y in np.linspace(-0.999, 0.999, 401):
            if y == 0:
                continue
            k_bar = 0.425 + 0.375 * y
            e = fit_gamma(SampleSummary(2, k_bar, 0.0), K_MIN, K_MAX)
            p = fit_gamma(SampleSummary(2, k_bar, 0.0), K_MIN, K_MAX, method="pade")
            assert abs(p.gamma_hat - e.gamma_hat) <= 5e-3 * abs(e.gamma_hat)

    def test_is_maximum_likelihood(self):
        # the moment equation and the score equation coincide
        d = TruncExp(2.5, K_MIN, K_MAX)
        data = sample(d, 2000, seed=5)
        fit = fit_gamma(summarize(data, K_MIN, K_MAX), K_MIN, K_MAX)
        res = minimize_scalar(lambda g: -log_likelihood(g, data, K_MIN, K_MAX),
                              bracket=(-10, 0.1, 10), tol=1e-12)
        assert fit.gamma_hat == pytest.approx(res.x, abs=1e-5)
        ll_hat = log_likelihood(fit.gamma_hat, data, K_MIN, K_MAX)
        for eps in (-1e-2, 1e-2):
            assert log_likelihood(fit.gamma_hat + eps, data, K_MIN, K_MAX) < ll_hat


class TestGoodness:
    def test_simulated(self):
        d = TruncExp(2.0, K_MIN, K_MAX)
        data = sample(d, 100_000, seed=3)
        report = goodness_variance(fit_gamma(summarize(data, K_MIN, K_MAX), K_MIN, K_MAX))
        assert 0.95 <= report.variance_ratio <= 1.05
        assert report.verdict == "consistent"

    def test_constant_data(self):
        fit = fit_gamma(summarize([0.4] * 5, K_MIN, K_MAX), K_MIN, K_MAX)
        report = goodness_variance(fit)
        assert report.variance_ratio == 0.0
        assert report.verdict == "suspect"

    def test_forced_uniform(self):
        s = SampleSummary(50, 0.3, 0.02)
        fit = FitResult(0.0, 0.0, "exact", 0.425, 0.0, 0.0, 0, K_MIN, K_MAX, s)
        report = goodness_variance(fit)
        assert report.variance_ratio == pytest.approx(0.02 / (0.375**2 / 3), rel=1e-15)

    def test_needs_two(self):
        fit = fit_gamma(SampleSummary(1, 0.3, 0.0), K_MIN, K_MAX)
        with pytest.raises(InsufficientDataError):
            goodness_variance(fit)

    def test_custom_bands(self):
        fit = fit_gamma(SampleSummary(10, 0.5, 0.03), K_MIN, K_MAX)
        ratio = goodness_variance(fit).variance_ratio
        assert goodness_variance(fit, bands=(ratio * 1.1, ratio * 2)).verdict == "suspect"
        with pytest.raises(ValueError):
            goodness_variance(fit, bands=(2.0, 1.0))
