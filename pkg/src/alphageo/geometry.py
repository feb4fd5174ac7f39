"""Metrics, connections and variance identities on Bayesian alpha-manifolds.

Analytic metrics are computed by exact enumeration over the alphabet.  The
finite-difference routines extract the Eguchi metric and the pair of
Christoffel symbols of an arbitrary two-point divergence ``D(theta, theta2)``
and serve as an independent oracle for the analytic formulas.
"""

from __future__ import annotations

import warnings
from collections import Counter
from itertools import product
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NumericalWarning
from .linalg import sym_inverse, symmetrize
from .manifold import BayesianModel, ParamDomain, ParametricFamily, Prior
from .measures import as_alpha, bayesian_divergence_from_parts, escort_probs, kld, relative_alpha_entropy

H_METRIC = 1e-3
H_CHRISTOFFEL = 1e-2

DivergenceFn = Callable[[np.ndarray, np.ndarray], float]


# ---------------------------------------------------------------------------
# analytic metrics


def _escort(p, alpha):
    a = as_alpha(alpha)
    return p if a.is_limit else escort_probs(p, a.alpha)


def alpha_fim(fam: ParametricFamily, theta, alpha) -> np.ndarray:
    """Escort covariance of the scores; the classical Fisher matrix at alpha = 1."""
    p = fam.pmf(theta)
    s = fam.score(theta)
    pe = _escort(p, alpha)
    c = s - (s @ pe)[:, None]
    return symmetrize((c * pe) @ c.T)


def classical_fim(fam: ParametricFamily, theta) -> np.ndarray:
    """``E_p[s s^T]`` (no centering, no escort)."""
    p = fam.pmf(theta)
    s = fam.score(theta)
    return symmetrize((s * p) @ s.T)


def prior_matrix(prior: Prior, theta) -> np.ndarray:
    """Rank-one matrix ``grad log lambda  grad log lambda^T``."""
    prior.density(theta)
    g = prior.log_gradient(theta)
    return np.outer(g, g)


def bayesian_alpha_metric(m: BayesianModel, theta, alpha) -> np.ndarray:
    """``lambda(theta) * (alpha_fim + prior_matrix)``."""
    lam = m.prior.density(theta)
    return lam * (alpha_fim(m.family, theta, alpha) + prior_matrix(m.prior, theta))


def alpha_divergence_metric(fam: ParametricFamily, theta, alpha) -> np.ndarray:
    """Eguchi metric of the (non-Bayesian) relative alpha-entropy: ``alpha * alpha_fim``.

    Under a constant prior ``c`` the Bayesian metric is ``c * alpha_fim``; the
    two normalizations differ by the factor ``alpha / c``.
    """
    return as_alpha(alpha).alpha * alpha_fim(fam, theta, alpha)


# ---------------------------------------------------------------------------
# divergence adapters


def bayesian_divergence(m: BayesianModel, alpha, *, printed: bool = False) -> DivergenceFn:
    a = as_alpha(alpha)

    def div(t, t2):
        return bayesian_divergence_from_parts(
            m.family.pmf(t), m.prior.density(t), m.family.pmf(t2), m.prior.density(t2), a, printed=printed
        )

    return div


def family_divergence(fam: ParametricFamily, fn=kld) -> DivergenceFn:
    """Pull back a pmf divergence ``fn(p, q)`` to parameter space."""

    def div(t, t2):
        return fn(fam.pmf(t), fam.pmf(t2))

    return div


def alpha_divergence(fam: ParametricFamily, alpha) -> DivergenceFn:
    a = as_alpha(alpha)
    return family_divergence(fam, lambda p, q: relative_alpha_entropy(p, q, a))


# ---------------------------------------------------------------------------
# finite-difference stencils

_STENCIL_1D = {
    1: ((-1.0, -0.5), (1.0, 0.5)),  # (offset / h, weight * h)
    2: ((-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)),
}


def mixed_derivative(div: DivergenceFn, theta, slots, h: float) -> float:
    """Central-difference mixed partial of ``div`` at the diagonal ``(theta, theta)``.

    ``slots`` lists the differentiations as ``(arg, coord)`` with ``arg`` 0 for
    the first argument and 1 for the second.  Each (arg, coord) may appear at
    most twice.
    """
    t = np.asarray(theta, dtype=float)
    groups = sorted(Counter(slots).items())
    order = sum(n for _, n in groups)
    for _, n in groups:
        if n not in _STENCIL_1D:
            raise ValueError("each (arg, coord) may be differentiated at most twice")
    total = 0.0
    for combo in product(*(_STENCIL_1D[n] for _, n in groups)):
        u = np.zeros_like(t)
        v = np.zeros_like(t)
        weight = 1.0
        for ((arg, coord), _), (off, w) in zip(groups, combo):
            (u if arg == 0 else v)[coord] += off * h
            weight *= w
        if weight != 0.0:
            total += weight * div(t + u, t + v)
    return total / h**order


def _check_stencil(domain: Optional[ParamDomain], theta, reach: float):
    if domain is None:
        return np.asarray(theta, dtype=float)
    return domain.check_interior(theta, reach)


def eguchi_metric_fd(
    div: DivergenceFn,
    theta,
    h: float = H_METRIC,
    domain: Optional[ParamDomain] = None,
    *,
    full: bool = False,
):
    """Negated mixed second derivative ``-d_i d'_j D`` on the diagonal, symmetrized.

    With ``full=True`` returns ``(metric, relative_asymmetry)``.
    """
    t = _check_stencil(domain, theta, h)
    k = t.size
    g = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            g[i, j] = -mixed_derivative(div, t, [(0, i), (1, j)], h)
    scale = max(float(np.max(np.abs(g))), 1e-300)
    asym = float(np.max(np.abs(g - g.T))) / scale
    if asym > 1e-4:
        warnings.warn(f"Eguchi stencil asymmetry {asym:.2e} exceeds 1e-4", NumericalWarning, stacklevel=2)
    sym = symmetrize(g)
    return (sym, asym) if full else sym


def christoffel_fd(
    div: DivergenceFn,
    theta,
    h: float = H_CHRISTOFFEL,
    domain: Optional[ParamDomain] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Third-order stencils for the connection coefficients of ``div`` and its dual.

    ``gamma[i, j, k] = -d_i d_j d'_k D`` and ``gamma_dual[i, j, k] = -d_k d'_i d'_j D``.
    """
    t = _check_stencil(domain, theta, h)
    n = t.size
    gamma = np.empty((n, n, n))
    gamma_dual = np.empty((n, n, n))
    for i, j, k in product(range(n), repeat=3):
        gamma[i, j, k] = -mixed_derivative(div, t, [(0, i), (0, j), (1, k)], h)
        gamma_dual[i, j, k] = -mixed_derivative(div, t, [(0, k), (1, i), (1, j)], h)
    for g in (gamma, gamma_dual):
        noise = float(np.max(np.abs(g - g.transpose(1, 0, 2))))
        if noise > 1e-6 * max(float(np.max(np.abs(g))), 1.0):
            warnings.warn(f"Christoffel stencil asymmetry {noise:.2e}", NumericalWarning, stacklevel=2)
    return gamma, gamma_dual


def metric_derivative_fd(
    div: DivergenceFn, theta, h: float = H_CHRISTOFFEL, domain: Optional[ParamDomain] = None
) -> np.ndarray:
    """``dg[k, i, j] = d_k g_ij`` by moving the base point of the Eguchi stencil."""
    t = _check_stencil(domain, theta, 2 * h)
    n = t.size
    dg = np.empty((n, n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = h
        # unsymmetrized -d_i d'_j D so that the identity is tested index by index
        plus = np.array([[-mixed_derivative(div, t + e, [(0, i), (1, j)], h) for j in range(n)] for i in range(n)])
        minus = np.array([[-mixed_derivative(div, t - e, [(0, i), (1, j)], h) for j in range(n)] for i in range(n)])
        dg[k] = (plus - minus) / (2 * h)
    return dg


def dualistic_residual(
    div: DivergenceFn, theta, h: float = H_CHRISTOFFEL, domain: Optional[ParamDomain] = None
) -> float:
    """Relative residual of ``d_k g_ij = Gamma_{ki,j} + Gamma*_{kj,i}``.

    The scale includes the metric itself so that points where all third-order
    quantities vanish by symmetry do not divide noise by noise.
    """
    dg = metric_derivative_fd(div, theta, h, domain)
    gamma, gamma_dual = christoffel_fd(div, theta, h, domain)
    g = eguchi_metric_fd(div, theta, min(h, H_METRIC), domain)
    rhs = gamma + gamma_dual.transpose(0, 2, 1)
    scale = max(float(np.max(np.abs(a))) for a in (dg, gamma, gamma_dual, g))
    return float(np.max(np.abs(dg - rhs))) / max(scale, 1e-300)


# ---------------------------------------------------------------------------
# variance / differential identities


def as_observable(A, d: int) -> np.ndarray:
    a = np.asarray(A, dtype=float)
    if a.shape != (d,):
        raise DomainError(f"observable must have length {d}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("observable entries must be finite")
    return a


def weighted_variance(m: BayesianModel, theta, alpha, A) -> float:
    """``Var_esc[(p~ / p_esc) (A - E_p~[A])]`` by enumeration."""
    p = m.family.pmf(theta)
    A = as_observable(A, p.size)
    pt = m.prior.density(theta) * p
    pe = _escort(p, alpha)
    z = pt / pe * (A - pt @ A)
    mean = pe @ z
    return float(pe @ (z - mean) ** 2)


def expectation_gradient(m: BayesianModel, theta, A) -> np.ndarray:
    """``d_i E_p~[A] = lambda * (d_i log lambda * E_p[A] + E_p[s_i A])``."""
    p = m.family.pmf(theta)
    A = as_observable(A, p.size)
    lam = m.prior.density(theta)
    s = m.family.score(theta)
    return lam * (m.prior.log_gradient(theta) * (p @ A) + s @ (p * A))


def differential_norm_sq(m: BayesianModel, theta, alpha, A) -> float:
    """Squared norm of the differential of ``E_p~[A]`` under the Bayesian alpha-metric."""
    grad = expectation_gradient(m, theta, A)
    ginv = sym_inverse(bayesian_alpha_metric(m, theta, alpha))
    return float(grad @ ginv @ grad)
