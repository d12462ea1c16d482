"""Tests for seeded sampling and the Monte-Carlo averager."""

import math

import numpy as np
import pytest

from codanorm import (
    AlnLaw,
    InsufficientDataError,
    LognormalLaw,
    NormalOnRPlus,
    NormalOnSimplex,
    SeededStream,
    ait_distance,
    fit_nrp,
    fit_nsd,
    mc_expectation,
    nsd_moments,
    sample_aln,
    sample_lognormal,
    sample_nrp,
    sample_nsd,
    uniform,
)


class TestSeededStream:
    def test_rejects_negative_ids(self):
        from codanorm import ValidationError

        with pytest.raises(ValidationError):
            SeededStream(-1)
        with pytest.raises(ValidationError):
            SeededStream(1, -2)

    def test_generator_restarts(self):
        s = SeededStream(123, 4)
        a = s.generator().standard_normal(5)
        b = s.generator().standard_normal(5)
        assert np.array_equal(a, b)

    def test_child_streams_differ(self):
        s = SeededStream(123)
        a = s.child(1).generator().standard_normal(5)
        b = s.child(2).generator().standard_normal(5)
        assert not np.array_equal(a, b)


class TestScalarSampling:
    def test_determinism(self):
        law = NormalOnRPlus(1.0, 4.0)
        s1 = sample_nrp(law, 100, SeededStream(5, 7))
        s2 = sample_nrp(law, 100, SeededStream(5, 7))
        assert np.array_equal(s1.logs, s2.logs)

    def test_lognormal_alias_identical_draws(self):
        nrp = NormalOnRPlus(0.3, 1.2)
        logn = LognormalLaw(0.3, 1.2)
        a = sample_nrp(nrp, 50, SeededStream(9, 0))
        b = sample_lognormal(logn, 50, SeededStream(9, 0))
        assert np.array_equal(a.logs, b.logs)

    def test_near_degenerate_law_clusters_at_mean(self):
        law = NormalOnRPlus(2.0, 1e-12)
        s = sample_nrp(law, 100, SeededStream(1, 0))
        vals = np.exp(s.logs)
        assert np.all(np.abs(vals - math.exp(2.0)) < 1e-4)

    def test_median_recovery(self):
        law = NormalOnRPlus(1.0, 4.0)
        s = sample_nrp(law, 100_000, SeededStream(17, 0))
        med = np.median(np.exp(s.logs))
        # se of the sample median of a continuous law:
        # 1/(2 sqrt(n) f(median)), with f the usual density at the median
        f_med = math.exp(-1.0) / (math.exp(1.0) * 2.0 * math.sqrt(2 * math.pi))
        se = 1.0 / (2.0 * math.sqrt(100_000) * f_med)
        assert abs(med - math.e) < 3 * se

    def test_parameter_recovery(self):
        law = NormalOnRPlus(-0.7, 0.36)
        s = sample_nrp(law, 40_000, SeededStream(23, 0))
        fitted = fit_nrp(s)
        assert abs(fitted.mu - -0.7) < 3 * math.sqrt(0.36 / 40_000)
        assert abs(fitted.sigma2 - 0.36) < 3 * 0.36 * math.sqrt(2.0 / 39_999)

    def test_stream_independence(self):
        law = NormalOnRPlus(0.0, 1.0)
        a = sample_nrp(law, 100_000, SeededStream(3, 0)).logs
        b = sample_nrp(law, 100_000, SeededStream(3, 1)).logs
        corr = np.corrcoef(a, b)[0, 1]
        assert abs(corr) < 0.01


class TestSimplexSampling:
    def test_determinism_and_aln_alias(self):
        nsd = NormalOnSimplex([0.2, -0.1], [[1.0, 0.3], [0.3, 0.8]])
        aln = AlnLaw([0.2, -0.1], [[1.0, 0.3], [0.3, 0.8]])
        s1 = sample_nsd(nsd, 64, SeededStream(4, 2))
        s2 = sample_aln(aln, 64, SeededStream(4, 2))
        assert np.array_equal(s1.rows, s2.rows)

    def test_draws_are_valid_compositions(self):
        law = NormalOnSimplex([0.0, 0.0, 0.0], np.eye(3) * 2.0)
        s = sample_nsd(law, 500, SeededStream(10, 0))
        assert np.all(s.rows > 0)
        assert np.allclose(s.rows.sum(axis=1), 1.0, atol=1e-12)

    def test_concentrated_law_clusters_at_center(self):
        law = NormalOnSimplex([0.0, 0.0], np.eye(2) * 1e-10)
        s = sample_nsd(law, 50, SeededStream(2, 0))
        for comp in s.compositions():
            assert ait_distance(comp, uniform(3)) < 1e-4

    def test_parameter_recovery(self):
        mu = np.array([0.5, -0.3])
        sigma = np.array([[0.9, 0.4], [0.4, 1.3]])
        law = NormalOnSimplex(mu, sigma)
        s = sample_nsd(law, 100_000, SeededStream(21, 0))
        fitted = fit_nsd(s)
        se_mu = np.sqrt(np.diag(sigma) / 100_000)
        assert np.all(np.abs(fitted.mu - mu) < 3 * se_mu)
        # variance entries: se ~ sigma_jj * sqrt(2/(n-1))
        se_var = np.diag(sigma) * math.sqrt(2.0 / 99_999)
        assert np.all(np.abs(np.diag(fitted.sigma) - np.diag(sigma)) < 3 * se_var)

    def test_kappa_carries_through(self):
        law = NormalOnSimplex([0.0, 0.0], np.eye(2))
        s = sample_nsd(law, 10, SeededStream(0, 0), kappa=100.0)
        assert s.kappa == 100.0
        # rows live on the declared closure scale, like Composition.parts
        assert np.allclose(s.rows.sum(axis=1), 100.0, atol=1e-10)
        assert np.allclose(
            [c.parts.sum() for c in s.compositions()], 100.0, atol=1e-10
        )
        # the coordinates are scale-free: same draws at kappa=1 have the same
        s1 = sample_nsd(law, 10, SeededStream(0, 0), kappa=1.0)
        assert np.allclose(s1.coords, s.coords, atol=1e-12)


class TestMcExpectation:
    def test_constant_function(self):
        law = NormalOnRPlus(0.0, 1.0)
        est = mc_expectation(lambda x: 1.0, law, 200, SeededStream(1, 0))
        assert est.estimate == 1.0
        assert est.standard_error == 0.0
        assert est.n == 200

    def test_metric_variance_of_simplex_law(self):
        # E d_a(X, center)^2 = trace(Sigma) = 2 for the round law
        law = NormalOnSimplex([0.0, 0.0], np.eye(2))
        center = nsd_moments(law).center
        est = mc_expectation(
            lambda c: ait_distance(c, center) ** 2, law, 20_000, SeededStream(6, 0)
        )
        assert abs(est.estimate - 2.0) < 3 * est.standard_error

    def test_vectorized_and_scalar_agree(self):
        law = NormalOnRPlus(0.5, 0.8)
        f_scalar = lambda v: v.log ** 2
        f_vec = lambda arr: np.log(arr) ** 2
        a = mc_expectation(f_scalar, law, 500, SeededStream(8, 3))
        b = mc_expectation(f_vec, law, 500, SeededStream(8, 3), vectorized=True)
        assert a.estimate == pytest.approx(b.estimate, rel=1e-12)

    def test_simplex_vectorized_first_part(self):
        law = NormalOnSimplex([0.0, 0.0], np.eye(2))
        est = mc_expectation(
            lambda rows: rows[:, 0], law, 50_000, SeededStream(12, 0), vectorized=True
        )
        # by symmetry the first-part mean is exactly 1/3
        assert abs(est.estimate - 1 / 3) < 3 * est.standard_error

    def test_needs_hundred_draws(self):
        law = NormalOnRPlus(0.0, 1.0)
        with pytest.raises(InsufficientDataError):
            mc_expectation(lambda x: 1.0, law, 99, SeededStream(1, 0))

    def test_bad_output_shape_rejected(self):
        from codanorm import ValidationError

        law = NormalOnRPlus(0.0, 1.0)
        with pytest.raises(ValidationError):
            mc_expectation(
                lambda arr: arr.reshape(-1, 1), law, 100, SeededStream(1, 0),
                vectorized=True,
            )
