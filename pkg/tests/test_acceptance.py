"""Acceptance gate: one test per numbered criterion.

Each test carries ``@pytest.mark.acceptance(num, title)``; the conftest
hook prints a one-line pass/fail summary per criterion after the run.
Criteria that compare against published golden numbers for the Skye lavas
dataset (1, 2, 10) depend on the bundled transcription being exact; see
``codanorm.datasets`` for its provenance status.
"""

import math
import time

import numpy as np
import pytest
from scipy import integrate, stats

from codanorm import (
    AlnLaw,
    LognormalLaw,
    NormalOnRPlus,
    NormalOnSimplex,
    SeededStream,
    SimplexSample,
    ci_mean_nrp,
    fit_nrp,
    fit_nsd,
    geometric_mean,
    gof_battery,
    ilr,
    ilr_inv,
    lognormal_naive_interval,
    lognormal_pdf,
    mc_expectation,
    naive_lognormal_mean,
    nrp_moments,
    nrp_pdf,
    nrp_transform,
    nsd_moments,
    nsd_pdf,
    nsd_permute,
    nsd_subcomposition,
    nsd_transform,
    probability_of_box,
    probability_of_interval,
    sample_nrp,
    sample_nsd,
    ternary_density_grid,
)
from codanorm.datasets import skye_lavas_afm
from codanorm.inference import RPlusSample
from codanorm.laws import aln_pdf_rows
from codanorm.simplex import (
    ContrastBasis,
    closure,
    PermutationMap,
    SelectionMatrix,
    closure_rows,
    default_basis,
    ilr_inv_rows,
    ilr_rows,
    random_basis,
)

GOLDEN_MU = np.array([0.555, 0.639])
GOLDEN_SIGMA = np.array([[0.126, -0.229], [-0.229, 0.456]])
GOLDEN_SIGMA_T = np.array([[0.377, -0.688], [-0.688, 1.369]])


def _fit_skye():
    sample = skye_lavas_afm()
    t0 = time.perf_counter()
    law = fit_nsd(sample)
    elapsed = time.perf_counter() - t0
    return sample, law, elapsed


@pytest.mark.acceptance(1, "Skye lavas golden fit")
def test_criterion_1_skye_golden_fit():
    sample, law, elapsed = _fit_skye()
    assert elapsed < 1.0
    assert sample.n == 23
    note = (
        "fitted parameters differ from the published three-decimal values; "
        "the bundled dataset transcription could not be verified against the "
        "original table (see codanorm.datasets), so a transcription error is "
        "the prime suspect.\n"
        f"mu_hat    = {law.mu!r}\n"
        f"sigma_hat = {law.sigma!r}"
    )
    assert np.all(np.abs(law.mu - GOLDEN_MU) <= 0.002), note
    assert np.all(np.abs(law.sigma - GOLDEN_SIGMA) <= 0.002), note


@pytest.mark.acceptance(2, "Skye lavas transformed fit")
def test_criterion_2_skye_transformed_fit():
    sample, law, _ = _fit_skye()
    # center the sample at the inverse of its geometric center, then power
    # by sqrt(3): x* = sqrt(3) (.) (g^-1 (+) x)
    b = math.sqrt(3.0)
    center = sample.center()
    shifted = closure_rows(sample.rows / center.proportions)
    transformed = SimplexSample.from_rows(closure_rows(shifted**b))
    law_t = fit_nsd(transformed)

    # internal consistency (holds whatever the data say): the fitted law of
    # the transformed sample is the closed-form transport of the fitted law
    assert np.all(np.abs(law_t.mu) <= 0.002)
    assert np.all(np.abs(law_t.sigma - 3.0 * law.sigma) <= 0.003)

    note = (
        "transformed covariance differs from the published values; consistent "
        "with criterion 1, this traces back to the unverified dataset "
        "transcription.\n"
        f"sigma_hat(transformed) = {law_t.sigma!r}"
    )
    assert np.all(np.abs(law_t.sigma - GOLDEN_SIGMA_T) <= 0.003), note


@pytest.mark.acceptance(3, "Lognormal naive mean±sd interval")
def test_criterion_3_naive_interval():
    law = LognormalLaw(0.0, 1.0)
    naive = lognormal_naive_interval(law, 1.0)
    assert naive.lower == pytest.approx(-0.512, abs=1e-3)
    assert naive.upper == pytest.approx(3.810, abs=1e-3)
    assert naive.lower_in_support is False
    assert naive.upper_in_support is True


@pytest.mark.acceptance(4, "Same-law equivalence on the positive line")
def test_criterion_4_same_law_rplus():
    gen = np.random.default_rng(20240404)
    worst_pair = 0.0
    worst_quad = 0.0
    for _ in range(100):
        mu = gen.uniform(-3.0, 3.0)
        sigma2 = gen.uniform(0.05, 4.0)
        a, b = np.sort(np.exp(gen.normal(mu, math.sqrt(sigma2), size=2)))
        p_nrp = probability_of_interval(NormalOnRPlus(mu, sigma2), a, b)
        ln_law = LognormalLaw(mu, sigma2)
        p_ln = probability_of_interval(ln_law, a, b)
        worst_pair = max(worst_pair, abs(p_ln - p_nrp))
        quad, _ = integrate.quad(
            lambda t: lognormal_pdf(ln_law, t), a, b, epsabs=1e-12, epsrel=1e-12
        )
        worst_quad = max(worst_quad, abs(p_nrp - quad))
    assert worst_pair < 1e-12
    assert worst_quad < 1e-8


@pytest.mark.acceptance(5, "Same-law equivalence on the simplex (MC)")
def test_criterion_5_same_law_simplex():
    t0 = time.perf_counter()
    n = 1_000_000
    gen = np.random.default_rng(20240505)
    # one shared flat sample: Dirichlet(1,1,1) has constant density
    # (D-1)! = 2 against the coordinate Lebesgue measure the aln density
    # is referred to, so integrals are flat-means divided by 2
    rows = gen.dirichlet((1.0, 1.0, 1.0), size=n)
    coords = ilr_rows(rows)
    for _ in range(20):
        mu = gen.uniform(-1.0, 1.0, size=2)
        spread = gen.uniform(0.3, 1.3, size=2)
        rho = gen.uniform(-0.7, 0.7)
        sigma = np.array(
            [
                [spread[0] ** 2, rho * spread[0] * spread[1]],
                [rho * spread[0] * spread[1], spread[1] ** 2],
            ]
        )
        half = gen.uniform(0.4, 1.6, size=(2, 2))
        lower = mu - half[0] * spread
        upper = mu + half[1] * spread
        exact = probability_of_box(NormalOnSimplex(mu, sigma), lower, upper)
        inside = np.all((coords >= lower) & (coords <= upper), axis=1)
        weights = aln_pdf_rows(AlnLaw(mu, sigma), rows) * inside
        estimate = weights.mean() / 2.0
        se = weights.std(ddof=1) / math.sqrt(n) / 2.0
        assert abs(estimate - exact) <= 3.0 * se, (estimate, exact, se)
    assert time.perf_counter() - t0 < 60.0


@pytest.mark.acceptance(6, "Trimodality vs unimodality of the grids")
def test_criterion_6_grid_modality():
    t0 = time.perf_counter()
    tri = ternary_density_grid(AlnLaw([0.0, 0.0], np.eye(2)), resolution=400)
    uni = ternary_density_grid(NormalOnSimplex([0.0, 0.0], np.eye(2)), resolution=400)
    elapsed = time.perf_counter() - t0
    assert len(tri.maxima) == 3
    assert len(uni.maxima) == 1
    assert elapsed < 10.0


@pytest.mark.acceptance(7, "Transport, invariance and moment properties")
def test_criterion_7_property_suite():
    gen = np.random.default_rng(20240707)
    n = 100_000

    # --- positive line -----------------------------------------------------
    for k in range(5):
        mu = gen.uniform(-2.0, 2.0)
        sigma2 = gen.uniform(0.2, 2.0)
        a = math.exp(gen.uniform(-1.5, 1.5))
        b = gen.uniform(-2.0, 2.0) or 1.0
        law = NormalOnRPlus(mu, sigma2)

        # closed-form parameter transport
        law_ab = nrp_transform(law, a, b)
        assert law_ab.mu == math.log(a) + b * mu
        assert law_ab.sigma2 == b * b * sigma2

        # density invariance under perturbation at 1e-12
        x = math.exp(gen.uniform(-2.0, 2.0))
        shifted = nrp_transform(law, a, 1.0)
        assert nrp_pdf(shifted, a * x) == pytest.approx(
            nrp_pdf(law, x), rel=1e-12
        )

        # closed-form moment identities
        moments = nrp_moments(law)
        assert moments.mean.value == math.exp(mu)
        assert moments.median.value == math.exp(mu)
        assert moments.mode.value == math.exp(mu)
        assert moments.metric_variance == sigma2

    # MC side, n = 1e5: transport and moments within 3 se
    law = NormalOnRPlus(0.4, 0.81)
    a, b = 2.5, -1.25
    draws = sample_nrp(law, n, SeededStream(71, 0))
    logs_t = math.log(a) + b * draws.logs
    fitted = fit_nrp(RPlusSample(np.exp(logs_t)))
    target = nrp_transform(law, a, b)
    assert abs(fitted.mu - target.mu) <= 3.0 * math.sqrt(target.sigma2 / n)
    assert abs(fitted.sigma2 - target.sigma2) <= 3.0 * target.sigma2 * math.sqrt(
        2.0 / (n - 1)
    )
    assert abs(np.mean(draws.logs) - law.mu) <= 3.0 * math.sqrt(law.sigma2 / n)
    assert abs(np.median(draws.logs) - law.mu) <= 3.0 * math.sqrt(
        law.sigma2 * math.pi / (2.0 * n)
    )
    assert abs(np.var(draws.logs, ddof=1) - law.sigma2) <= 3.0 * law.sigma2 * math.sqrt(
        2.0 / (n - 1)
    )

    # --- simplex ------------------------------------------------------------
    D = 4
    mu = np.array([0.3, -0.5, 0.8])
    root = gen.uniform(-0.6, 0.6, size=(3, 3))
    sigma = root @ root.T + 0.4 * np.eye(3)
    law_s = NormalOnSimplex(mu, sigma)
    a_comp = closure(np.exp(gen.uniform(-1.0, 1.0, size=D)))
    b = 1.75

    # closed-form transport: a (+) (b (.) X)
    law_t = nsd_transform(law_s, a_comp, b)
    assert np.allclose(law_t.mu, ilr(a_comp) + b * mu, atol=0, rtol=1e-15)
    assert np.allclose(law_t.sigma, b * b * sigma, atol=0, rtol=1e-15)

    # density invariance under perturbation at 1e-12
    x = closure(np.exp(gen.normal(0.0, 0.7, size=D)))
    shifted = nsd_transform(law_s, a_comp, 1.0)
    ax = closure(a_comp.proportions * x.proportions)
    assert nsd_pdf(shifted, ax) == pytest.approx(nsd_pdf(law_s, x), rel=1e-12)

    # permutation and subcomposition transports against the matrix identity
    perm = PermutationMap([2, 0, 3, 1])
    U = default_basis(D).matrix
    P = np.eye(D)[perm.image]
    M = U.T @ P @ U
    law_p = nsd_permute(law_s, perm)
    assert np.allclose(law_p.mu, M @ mu, atol=1e-14)
    assert np.allclose(law_p.sigma, M @ sigma @ M.T, atol=1e-14)

    sel = SelectionMatrix([0, 2, 3], D)
    Ms = default_basis(3).matrix.T @ sel.matrix @ U
    law_sub = nsd_subcomposition(law_s, sel)
    assert np.allclose(law_sub.mu, Ms @ mu, atol=1e-14)
    assert np.allclose(law_sub.sigma, Ms @ sigma @ Ms.T, atol=1e-14)

    # closed-form moment identities: center and metric variance
    m = nsd_moments(law_s)
    assert np.array_equal(m.center.parts, ilr_inv(mu).parts)
    assert m.metric_variance == np.trace(sigma)

    # MC side, n = 1e5
    stream = SeededStream(72, 0)
    draws_s = sample_nsd(law_s, n, stream)
    se_mu = np.sqrt(np.diag(sigma) / n)
    assert np.all(np.abs(draws_s.coords.mean(axis=0) - mu) <= 3.0 * se_mu)

    metric = mc_expectation(
        lambda rows: np.sum((ilr_rows(rows) - mu) ** 2, axis=1),
        law_s,
        n,
        SeededStream(73, 0),
        vectorized=True,
    )
    assert abs(metric.estimate - np.trace(sigma)) <= 3.0 * metric.standard_error

    # transformed samples refit to the transported parameters within 3 se
    rows_t = closure_rows(a_comp.proportions * draws_s.rows**b)
    fitted_t = fit_nsd(SimplexSample.from_rows(rows_t))
    se_cov = np.sqrt(
        (np.outer(np.diag(law_t.sigma), np.diag(law_t.sigma)) + law_t.sigma**2) / n
    )
    assert np.all(np.abs(fitted_t.mu - law_t.mu) <= 3.0 * np.sqrt(np.diag(law_t.sigma) / n))
    assert np.all(np.abs(fitted_t.sigma - law_t.sigma) <= 3.0 * se_cov)

    rows_p = draws_s.rows[:, perm.image]
    fitted_p = fit_nsd(SimplexSample.from_rows(rows_p))
    assert np.all(np.abs(fitted_p.mu - M @ fit_nsd(draws_s).mu) <= 1e-10)

    rows_sub = closure_rows(draws_s.rows[:, [0, 2, 3]])
    fitted_sub = fit_nsd(SimplexSample.from_rows(rows_sub))
    direct_sub = nsd_subcomposition(fit_nsd(draws_s), sel)
    assert np.all(np.abs(fitted_sub.mu - direct_sub.mu) <= 1e-10)
    assert np.all(np.abs(fitted_sub.sigma - direct_sub.sigma) <= 1e-10)


@pytest.mark.acceptance(8, "Exact CI coverage at 90%")
def test_criterion_8_ci_coverage():
    reps, n = 10_000, 30
    mu, sigma = 1.0, 0.5
    gen = np.random.default_rng(20240808)
    logs = gen.normal(mu, sigma, size=(reps, n))
    ybar = logs.mean(axis=1)
    s = logs.std(axis=1, ddof=1)
    t_crit = stats.t.ppf(0.95, n - 1)
    half = t_crit * s / math.sqrt(n)
    covered = np.abs(ybar - mu) <= half
    coverage = covered.mean()
    assert 0.89 <= coverage <= 0.91, f"coverage {coverage:.4f}"

    # the vectorized replication above is the library's own interval: check
    # agreement with ci_mean_nrp on a few replications at 1e-12
    for i in range(25):
        sample = RPlusSample(np.exp(logs[i]))
        lo, hi = ci_mean_nrp(sample, 0.10)
        assert math.log(lo.value) == pytest.approx(ybar[i] - half[i], abs=1e-12)
        assert math.log(hi.value) == pytest.approx(ybar[i] + half[i], abs=1e-12)


@pytest.mark.acceptance(9, "Geometric mean is conservative and coordinate-exact")
def test_criterion_9_ordering():
    gen = np.random.default_rng(20240909)
    for _ in range(1000):
        n = int(gen.integers(5, 120))
        mu = gen.uniform(-2.0, 2.0)
        sigma = gen.uniform(0.1, 1.5)
        sample = RPlusSample(np.exp(gen.normal(mu, sigma, size=n)))
        geo = geometric_mean(sample)
        naive = naive_lognormal_mean(sample)
        assert geo.value < naive
        assert geo.value == math.exp(fit_nrp(sample).mu)


@pytest.mark.acceptance(10, "GOF battery on the Skye lavas")
def test_criterion_10_gof_battery():
    sample, law, _ = _fit_skye()
    report = gof_battery(sample, law)
    entries = list(report)
    assert len(entries) == 12
    rejections = report.rejections_at_1pct()
    table = "\n".join(
        f"  {e.layer:<8} {e.target:<22} {e.test_name:<18} "
        f"stat={e.statistic:.4f} crit={e.critical_1pct:.3f} "
        f"{'ok' if e.passed_at_1pct else 'REJECT'}"
        for e in entries
    )
    note = (
        "expected exactly one rejection at 1%, in a marginal layer; the "
        "discrepancy is reported against the recorded critical constants "
        "(D'Agostino & Stephens 1986 tables), with the unverified dataset "
        "transcription as the remaining suspect.\n" + table
    )
    assert len(rejections) == 1, note
    assert rejections[0].layer == "marginal", note


@pytest.mark.acceptance(11, "Isometry/homomorphism fuzz suite")
def test_criterion_11_fuzz():
    t0 = time.perf_counter()
    gen = np.random.default_rng(20241111)
    total = 0
    for D in range(2, 11):
        n = 1112
        total += n
        rows = closure_rows(np.exp(gen.normal(0.0, 2.0, size=(n, D))))
        other = closure_rows(np.exp(gen.normal(0.0, 2.0, size=(n, D))))
        coords = ilr_rows(rows)
        coords2 = ilr_rows(other)

        # isometry against the pairwise log-ratio oracle
        L = np.log(rows) - np.log(other)
        diff = L[:, :, None] - L[:, None, :]
        iu = np.triu_indices(D, 1)
        oracle = np.sqrt(np.sum(diff[:, iu[0], iu[1]] ** 2, axis=1) / D)
        dist = np.linalg.norm(coords - coords2, axis=1)
        assert np.max(np.abs(dist - oracle)) < 1e-10

        # homomorphism: perturbation adds, powering scales
        scale = float(gen.uniform(-3.0, 3.0))
        assert np.max(np.abs(ilr_rows(closure_rows(rows * other)) - (coords + coords2))) < 1e-10
        assert np.max(np.abs(ilr_rows(closure_rows(rows**scale)) - scale * coords)) < 1e-10

        # basis-change consistency
        basis2 = random_basis(D, gen)
        M = basis2.matrix.T @ default_basis(D).matrix
        assert np.max(np.abs(ilr_rows(rows, basis2) - coords @ M.T)) < 1e-10

        # alr/clr/ilr inter-convertibility
        U = default_basis(D).matrix
        clr_vals = np.log(rows) - np.log(rows).mean(axis=1, keepdims=True)
        assert np.max(np.abs(clr_vals @ U - coords)) < 1e-10
        assert np.max(np.abs(ilr_inv_rows(coords) - closure_rows(rows))) < 1e-10
        alr_vals = np.log(rows[:, :-1]) - np.log(rows[:, -1:])
        rebuilt = closure_rows(np.exp(np.hstack([alr_vals, np.zeros((n, 1))])))
        assert np.max(np.abs(ilr_rows(rebuilt) - coords)) < 1e-10

        # subcomposition coordinate law
        if D >= 3:
            C = int(gen.integers(2, D))
            idx = np.sort(gen.choice(D, size=C, replace=False)).tolist()
            sel = SelectionMatrix(idx, D)
            Ms = default_basis(C).matrix.T @ sel.matrix @ U
            sub_coords = ilr_rows(closure_rows(rows[:, idx]))
            assert np.max(np.abs(sub_coords - coords @ Ms.T)) < 1e-10

    assert total >= 10_000
    assert time.perf_counter() - t0 < 10.0
