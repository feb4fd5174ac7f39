import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from alphageo.errors import DomainError
from alphageo.geometry import (
    alpha_divergence,
    alpha_divergence_metric,
    alpha_fim,
    bayesian_alpha_metric,
    bayesian_divergence,
    christoffel_fd,
    classical_fim,
    differential_norm_sq,
    dualistic_residual,
    eguchi_metric_fd,
    expectation_gradient,
    family_divergence,
    mixed_derivative,
    prior_matrix,
    weighted_variance,
)
from alphageo.manifold import TangentVector, alpha_representation
from conftest import bernoulli, categorical, tilted
from oracles import bern_escort_fisher, beta22_density, beta22_dlog


def _rel(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))) / np.max(np.abs(b)))


# ---------------------------------------------------------------------------
# stencils on known divergences


def test_mixed_derivative_on_polynomial():
    # D = (t - s)^2 + t^2 s: -d_t d_s D = 2 - 2t, -d_t d_t d_s D = -2
    div = lambda t, s: float((t[0] - s[0]) ** 2 + t[0] ** 2 * s[0])  # noqa: E731
    t = np.array([0.3])
    assert_allclose(-mixed_derivative(div, t, [(0, 0), (1, 0)], 1e-3), 2 - 0.6, rtol=1e-8)
    assert_allclose(-mixed_derivative(div, t, [(0, 0), (0, 0), (1, 0)], 1e-2), -2.0, rtol=1e-8)


def test_mixed_derivative_rejects_third_repeat():
    with pytest.raises(ValueError):
        mixed_derivative(lambda t, s: 0.0, np.zeros(1), [(0, 0)] * 3, 1e-2)


def test_stencil_respects_domain_margin():
    m = bernoulli()
    with pytest.raises(DomainError):
        eguchi_metric_fd(bayesian_divergence(m, 2.0), [0.1005], 1e-3, m.domain)


# ---------------------------------------------------------------------------
# analytic metrics


def test_escort_fisher_fixture():
    fam = bernoulli().family
    assert_allclose(alpha_fim(fam, [0.2], 2.0), [[1 / 0.68**2]], rtol=1e-13)
    assert_allclose(alpha_fim(fam, [0.2], 2.0)[0, 0], 2.16263, atol=1e-5)
    for a in (0.5, 1.0, 3.0):
        assert_allclose(alpha_fim(fam, [0.35], a)[0, 0], bern_escort_fisher(0.35, a), rtol=1e-12)


@pytest.mark.parametrize("make", [bernoulli, categorical, tilted])
def test_alpha_fim_at_one_is_fisher(make):
    fam = make().family
    for t in fam.domain.lattice(2):
        assert_allclose(alpha_fim(fam, t, 1.0), classical_fim(fam, t), rtol=1e-12)


def test_bayesian_metric_fixture():
    m = bernoulli("beta")
    g = bayesian_alpha_metric(m, [0.2], 2.0)
    ref = beta22_density(0.2) * (bern_escort_fisher(0.2, 2.0) + beta22_dlog(0.2) ** 2)
    assert_allclose(g[0, 0], ref, rtol=1e-13)
    fd = eguchi_metric_fd(bayesian_divergence(m, 2.0), [0.2], 1e-3, m.domain)
    assert abs(fd[0, 0] - 16.5002) / 16.5002 <= 1e-3
    assert abs(fd[0, 0] - g[0, 0]) / g[0, 0] <= 1e-4


def test_prior_matrix_zero_for_uniform():
    m = categorical()
    for t in m.domain.lattice(3):
        assert np.all(prior_matrix(m.prior, t) == 0.0)


# ---------------------------------------------------------------------------
# finite-difference cross-validation


CONFIGS = [
    ("bernoulli", "uniform"), ("bernoulli", "beta"), ("categorical", "uniform"), ("categorical", "beta"),
]


@pytest.mark.parametrize("fam,prior", CONFIGS)
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_eguchi_metric_matches_analytic(fam, prior, alpha):
    m = (bernoulli if fam == "bernoulli" else categorical)(prior)
    div = bayesian_divergence(m, alpha)
    for t in m.domain.lattice(4 if m.k == 1 else 2, margin=1e-3):
        fd, asym = eguchi_metric_fd(div, t, 1e-3, m.domain, full=True)
        assert asym <= 1e-4
        assert _rel(fd, bayesian_alpha_metric(m, t, alpha)) <= 1e-4


def test_printed_form_has_the_same_metric():
    m = bernoulli("beta")
    for t in ([0.3], [0.7]):
        a = eguchi_metric_fd(bayesian_divergence(m, 0.5), t, 1e-3, m.domain)
        b = eguchi_metric_fd(bayesian_divergence(m, 0.5, printed=True), t, 1e-3, m.domain)
        assert_allclose(a, b, rtol=1e-6)


def test_kld_metric_is_fisher():
    fam = categorical().family
    t = np.array([0.2, 0.3])
    assert _rel(eguchi_metric_fd(family_divergence(fam), t, 1e-3, fam.domain), classical_fim(fam, t)) <= 1e-5


@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_constant_prior_scaling_between_normalizations(alpha):
    m = tilted()  # uniform prior with density 1 on the unit box
    fam = m.family
    t = np.array([0.1, -0.2])
    g_alpha = eguchi_metric_fd(alpha_divergence(fam, alpha), t, 1e-3, fam.domain)
    assert _rel(g_alpha, alpha_divergence_metric(fam, t, alpha)) <= 1e-4
    # Bayesian metric under constant prior c is (c / alpha) times the I_alpha metric
    assert_allclose(bayesian_alpha_metric(m, t, alpha), alpha_divergence_metric(fam, t, alpha) / alpha, rtol=1e-12)


# ---------------------------------------------------------------------------
# connections


def test_christoffel_symmetric_in_first_pair():
    m = categorical("beta")
    g, gd = christoffel_fd(bayesian_divergence(m, 2.0), [0.25, 0.2], 1e-2, m.domain)
    assert_allclose(g, g.transpose(1, 0, 2), atol=1e-6 * np.abs(g).max())
    assert_allclose(gd, gd.transpose(1, 0, 2), atol=1e-6 * np.abs(gd).max())


@pytest.mark.parametrize("prior", ["uniform", "beta"])
@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_dualistic_identity(prior, alpha):
    m = bernoulli(prior)
    div = bayesian_divergence(m, alpha)
    for t in m.domain.lattice(4, margin=0.03):
        assert dualistic_residual(div, t, 1e-2, m.domain) <= 1e-2


def test_dualistic_identity_two_parameters():
    m = categorical("beta")
    assert dualistic_residual(bayesian_divergence(m, 2.0), [0.25, 0.2], 1e-2, m.domain) <= 1e-2


# ---------------------------------------------------------------------------
# variance / differential inequality


def test_expectation_gradient_matches_fd(rng):
    m = categorical("beta")
    t = np.array([0.22, 0.31])
    A = rng.normal(size=3)
    h = 1e-6
    fd = [(m.measure(t + h * e) @ A - m.measure(t - h * e) @ A) / (2 * h) for e in np.eye(2)]
    assert_allclose(expectation_gradient(m, t, A), fd, rtol=1e-7)


UNIT_MODELS = [bernoulli("unit"), categorical("unit"), tilted("uniform")]


@pytest.mark.parametrize("m", UNIT_MODELS, ids=["bern-unit", "cat-unit", "tilted-unit-box"])
@settings(max_examples=40, deadline=None)
@given(alpha=st.sampled_from([0.5, 1.0, 2.0]), seed=st.integers(0, 2**32 - 1))
def test_variance_bound_with_unit_density(m, alpha, seed):
    r = np.random.default_rng(seed)
    t = m.domain.lo + (m.domain.hi - m.domain.lo) * r.uniform(0.05, 0.95, m.k)
    A = r.normal(size=m.family.d)
    slack = weighted_variance(m, t, alpha, A) - differential_norm_sq(m, t, alpha, A)
    assert slack >= -1e-8


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_variance_bound_equality_case(alpha, rng):
    m = tilted()
    fam = m.family
    for t in m.domain.lattice(3, margin=0.1):
        c = rng.normal(size=2)
        A = alpha_representation(TangentVector(c @ fam.pmf_gradient(t)), fam.pmf(t), alpha)
        lhs = weighted_variance(m, t, alpha, A)
        assert abs(lhs - differential_norm_sq(m, t, alpha, A)) <= 1e-8 * max(1.0, lhs)


def test_variance_bound_fails_for_normalized_nonflat_prior():
    # constant observable with a trunc-beta prior at alpha = 1: zero weighted
    # variance but a nonzero differential, so the inequality cannot hold
    m = bernoulli("beta")
    A = np.ones(2)
    t = [0.3]
    assert abs(weighted_variance(m, t, 1.0, A)) <= 1e-15
    assert differential_norm_sq(m, t, 1.0, A) > 1e-2


def test_weighted_variance_fixture(bern_uniform):
    assert_allclose(weighted_variance(bern_uniform, [0.3], 1.0, [0.0, 1.0]), 0.328125, rtol=1e-14)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_constant_observable_differential(alpha):
    # E_p~[c0] = c0 * lambda, so the differential norm is c0^2 (d lambda)^T G^-1 (d lambda)
    m = categorical("beta")
    t = np.array([0.22, 0.31])
    c0 = 1.7
    dlam = m.prior.gradient(t)
    ref = c0**2 * dlam @ np.linalg.solve(bayesian_alpha_metric(m, t, alpha), dlam)
    assert_allclose(differential_norm_sq(m, t, alpha, np.full(3, c0)), ref, rtol=1e-12)


@pytest.mark.parametrize("make", [bernoulli, categorical, tilted])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_analytic_metrics_positive_definite(make, alpha):
    m = make("beta") if make is not tilted else make()
    for t in m.domain.lattice(3):
        for g in (alpha_fim(m.family, t, alpha), bayesian_alpha_metric(m, t, alpha)):
            assert_allclose(g, g.T, atol=1e-14 * np.abs(g).max())
            assert np.linalg.eigvalsh(g).min() > 0
