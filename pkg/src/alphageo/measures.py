"""Finite-alphabet measures, entropies and divergences.

All logarithms are natural.  Orders within ``LIMIT_TOL`` of 1 are routed to
the Shannon/Kullback-Leibler formulas instead of the ``1/(1 - alpha)`` forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PriorError

EPS_FLOOR = 1e-12
SUM_TOL = 1e-12
LIMIT_TOL = 1e-6


@dataclass(frozen=True)
class AlphaOrder:
    """Order of the Renyi-type quantities; ``is_limit`` selects the alpha -> 1 branch."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a <= 0.0:
            raise DomainError(f"alpha must be a positive finite real, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def is_limit(self) -> bool:
        return abs(self.alpha - 1.0) < LIMIT_TOL


def as_alpha(a) -> AlphaOrder:
    return a if isinstance(a, AlphaOrder) else AlphaOrder(a)


class FinitePmf:
    """Strictly positive probability vector of length >= 2."""

    __slots__ = ("probs",)

    def __init__(self, probs):
        p = np.array(probs, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise DomainError("pmf must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(p)) or p.min() < EPS_FLOOR:
            raise DomainError(f"pmf entries must be >= {EPS_FLOOR:g}, min is {p.min()!r}")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise DomainError(f"pmf must sum to 1 (got {p.sum()!r})")
        p.setflags(write=False)
        self.probs = p

    def __len__(self):
        return self.probs.size

    def __array__(self, dtype=None, copy=None):
        return self.probs if dtype is None else self.probs.astype(dtype)

    def __repr__(self):
        return f"FinitePmf({self.probs.tolist()!r})"

    @classmethod
    def uniform(cls, d: int) -> "FinitePmf":
        return cls(np.full(d, 1.0 / d))


class PositiveMeasure:
    """Strictly positive (unnormalized) mass vector."""

    __slots__ = ("masses",)

    def __init__(self, masses):
        m = np.array(masses, dtype=float)
        if m.ndim != 1 or m.size < 2:
            raise DomainError("measure must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(m)) or m.min() < EPS_FLOOR:
            raise DomainError(f"masses must be >= {EPS_FLOOR:g}, min is {m.min()!r}")
        m.setflags(write=False)
        self.masses = m

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def normalized(self) -> FinitePmf:
        return FinitePmf(self.masses / self.total_mass)

    def __len__(self):
        return self.masses.size

    def __repr__(self):
        return f"PositiveMeasure({self.masses.tolist()!r})"


def _pmf(p) -> np.ndarray:
    if isinstance(p, FinitePmf):
        return p.probs
    return FinitePmf(p).probs


def _measure(m) -> np.ndarray:
    if isinstance(m, PositiveMeasure):
        return m.masses
    return PositiveMeasure(m).masses


def _pair(p, q):
    p, q = _pmf(p), _pmf(q)
    if p.size != q.size:
        raise DomainError(f"length mismatch: {p.size} vs {q.size}")
    return p, q


def entropy(p, alpha) -> float:
    """Renyi entropy of order ``alpha`` in nats (Shannon entropy at alpha = 1)."""
    p = _pmf(p)
    a = as_alpha(alpha)
    if a.is_limit:
        return float(-np.sum(p * np.log(p)))
    return float(np.log(np.sum(p ** a.alpha)) / (1.0 - a.alpha))


def kld(p, q) -> float:
    """Kullback-Leibler divergence ``sum p log(p/q)``."""
    p, q = _pair(p, q)
    return float(np.sum(p * np.log(p / q)))


def kld_positive_measures(pt, qt) -> float:
    """Relative entropy between unnormalized measures.

    ``sum pt log(pt/qt) - sum pt + sum qt``; nonnegative and zero only when
    the two mass vectors coincide.
    """
    pt, qt = _measure(pt), _measure(qt)
    if pt.size != qt.size:
        raise DomainError(f"length mismatch: {pt.size} vs {qt.size}")
    return float(np.sum(pt * np.log(pt / qt)) - pt.sum() + qt.sum())


def escort(p, alpha) -> FinitePmf:
    """alpha-escort ``p**alpha / sum(p**alpha)``."""
    p = _pmf(p)
    a = as_alpha(alpha)
    if a.is_limit:
        return FinitePmf(p)
    w = p ** a.alpha
    return FinitePmf(w / w.sum())


def escort_probs(p: np.ndarray, alpha: float) -> np.ndarray:
    # unchecked fast path used by the geometry code
    w = p ** alpha
    return w / w.sum()


def _rae_terms(p: np.ndarray, q: np.ndarray, al: float) -> float:
    """Relative alpha-entropy through log-ratios against the escort of ``q``.

    With ``r = p / q`` and ``q_esc`` the alpha-escort of ``q``,
    ``u = log E_qesc[r]`` and ``v = log E_qesc[r**alpha]`` give
    ``I_alpha = (alpha u - v) / (1 - alpha)``.  Both logs go through
    ``log1p``/``expm1`` so the result is exactly 0 when ``p == q``.
    """
    lr = np.log(p) - np.log(q)
    qe = escort_probs(q, al)
    u = np.log1p(np.sum(qe * np.expm1(lr)))
    v = np.log1p(np.sum(qe * np.expm1(al * lr)))
    return float((al * u - v) / (1.0 - al))


def relative_alpha_entropy(p, q, alpha) -> float:
    """Relative alpha-entropy (Sundaresan divergence) of ``p`` w.r.t. ``q``.

    ``alpha/(1-alpha) log sum p q**(alpha-1) - 1/(1-alpha) log sum p**alpha
    + log sum q**alpha``, evaluated in a rearranged form that is exact on the
    diagonal.  Delegates to :func:`kld` when ``alpha`` is in the limit branch.
    """
    p, q = _pair(p, q)
    a = as_alpha(alpha)
    if a.is_limit:
        return kld(p, q)
    return _rae_terms(p, q, a.alpha)


def csiszar_f_divergence(p, q, alpha) -> float:
    """f-divergence between the alpha-escorts with ``f(u) = sgn(1-a)(u**(1/a) - 1)``."""
    p, q = _pair(p, q)
    a = as_alpha(alpha)
    if a.is_limit:
        raise DomainError("csiszar_f_divergence is undefined in the alpha -> 1 branch")
    al = a.alpha
    pe, qe = escort_probs(p, al), escort_probs(q, al)
    sign = np.sign(1.0 - al)
    return float(np.sum(qe * sign * ((pe / qe) ** (1.0 / al) - 1.0)))


def renyi_divergence(p, q, order: float) -> float:
    """Renyi divergence ``log(sum p**r q**(1-r)) / (r - 1)``."""
    p, q = _pair(p, q)
    r = float(order)
    if not np.isfinite(r) or r <= 0.0 or r == 1.0:
        raise DomainError(f"order must be positive and != 1, got {order!r}")
    return float(np.log(np.sum(p ** r * q ** (1.0 - r))) / (r - 1.0))


def bayesian_divergence_from_parts(p, lam: float, q, lam2: float, alpha, *, printed: bool = False) -> float:
    """Bayesian relative alpha-entropy from raw pmfs and prior densities.

    ``lam/(1-a) log sum p (lam2 q)**(a-1) - lam log(sum p**a) / (a (1-a))
    + lam log lam - lam + lam2 + (lam/a) log sum q**a``, which equals
    ``lam log(lam/lam2) - lam + lam2 + (lam/a) I_a(p, q)``.

    ``p``/``q`` are the likelihood pmfs at the two parameters and ``lam``/``lam2``
    the prior densities there.  The default form carries the constant
    ``lam*log(lam) - lam + lam2`` so that it vanishes on the diagonal and tends
    to :func:`kld_positive_measures` as alpha -> 1.  ``printed=True`` returns
    the uncorrected expression, which differs by exactly ``2*lam``.
    """
    p, q = _pair(p, q)
    a = as_alpha(alpha)
    if not (lam > 0.0 and lam2 > 0.0):
        raise PriorError(f"prior density must be positive, got {lam!r}, {lam2!r}")
    shift = 2.0 * lam if printed else 0.0
    if a.is_limit:
        return kld_positive_measures(lam * p, lam2 * q) + shift
    # the closed form rearranges to a scalar relative entropy between the prior
    # masses plus a scaled relative alpha-entropy of the likelihoods
    mass = lam * np.log(lam / lam2) - lam + lam2
    return float(mass + lam / a.alpha * _rae_terms(p, q, a.alpha) + shift)


def bayesian_relative_alpha_entropy(model, theta, theta2, alpha, *, printed: bool = False) -> float:
    """Relative alpha-entropy between ``lambda(theta) p_theta`` and ``lambda(theta2) p_theta2``.

    ``model`` is a :class:`alphageo.manifold.BayesianModel`.
    """
    p = model.family.pmf(theta)
    q = model.family.pmf(theta2)
    return bayesian_divergence_from_parts(
        p, model.prior.density(theta), q, model.prior.density(theta2), alpha, printed=printed
    )
