"""Seeded random pmfs and the divergence-identity battery run over them."""

from __future__ import annotations

import numpy as np

from .measures import (
    as_alpha,
    csiszar_f_divergence,
    entropy,
    escort,
    kld,
    relative_alpha_entropy,
    renyi_divergence,
)

REJECT_BELOW = 1e-6


def random_pmfs(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """``n`` pmfs of length ``d`` from normalized exponential variates.

    Vectors with any entry below ``REJECT_BELOW`` are redrawn.
    """
    out = np.empty((n, d))
    filled = 0
    while filled < n:
        x = rng.exponential(size=(n - filled, d))
        x /= x.sum(axis=1, keepdims=True)
        keep = x[np.all(x >= REJECT_BELOW, axis=1)]
        out[filled:filled + len(keep)] = keep
        filled += len(keep)
    # renormalize so that every row sums to 1 within the pmf tolerance
    return out / out.sum(axis=1, keepdims=True)


def divergence_battery(ps: np.ndarray, qs: np.ndarray, alpha: float) -> dict:
    """Worst-case residuals of the relative alpha-entropy identities over pmf pairs.

    The Csiszar and Renyi residuals are reported as 0 at alpha = 1, where
    neither identity is defined.
    """
    d = ps.shape[1]
    min_div = np.inf
    max_self = 0.0
    csiszar = renyi = uniform = 0.0
    uni = np.full(d, 1.0 / d)
    limit = as_alpha(alpha).is_limit
    sgn = np.sign(1.0 - alpha)
    for p, q in zip(ps, qs):
        val = relative_alpha_entropy(p, q, alpha)
        min_div = min(min_div, val)
        max_self = max(max_self, abs(relative_alpha_entropy(p, p, alpha)))
        if not limit:
            df = csiszar_f_divergence(p, q, alpha)
            csiszar = max(csiszar, abs(alpha / (1.0 - alpha) * np.log(sgn * df + 1.0) - val))
            rd = renyi_divergence(escort(p, alpha), escort(q, alpha), 1.0 / alpha)
            renyi = max(renyi, abs(rd - val))
        uniform = max(uniform, abs(relative_alpha_entropy(p, uni, alpha) - (np.log(d) - entropy(p, alpha))))
    return {
        "min_divergence": float(min_div),
        "max_self_divergence": float(max_self),
        "max_csiszar_residual": float(csiszar),
        "max_renyi_residual": float(renyi),
        "max_uniform_identity_residual": float(uniform),
    }


def continuity_battery(ps: np.ndarray, qs: np.ndarray, eps: float = 1e-3) -> float:
    """Largest ``|I_{1 +- eps}(p, q) - KL(p, q)|`` over the pairs."""
    worst = 0.0
    for p, q in zip(ps, qs):
        k = kld(p, q)
        for a in (1.0 - eps, 1.0 + eps):
            worst = max(worst, abs(relative_alpha_entropy(p, q, a) - k))
    return float(worst)
