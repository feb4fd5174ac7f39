"""Parametric families, priors and tangent representations on a finite alphabet.

A family maps a parameter vector ``theta`` (length ``k``) to a strictly
positive pmf over ``d`` symbols.  Together with a prior density on the same
parameter box it forms a :class:`BayesianModel`, i.e. the unnormalized
measures ``lambda(theta) * p_theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

import numpy as np
from scipy import integrate, special

from .errors import ConfigError, DomainError, PriorError
from .measures import EPS_FLOOR, LIMIT_TOL, SUM_TOL, PositiveMeasure, as_alpha, escort_probs
from .quadrature import QuadratureGrid

H_SCORE = 1e-5


# ---------------------------------------------------------------------------
# parameter domain


@dataclass(frozen=True)
class ParamDomain:
    """Closed box ``[lo_i, hi_i]`` in parameter space."""

    boxes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        boxes = tuple((float(lo), float(hi)) for lo, hi in self.boxes)
        if not boxes:
            raise DomainError("parameter domain needs at least one interval")
        for i, (lo, hi) in enumerate(boxes):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise DomainError(f"interval {i} must satisfy lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "boxes", boxes)

    @property
    def k(self) -> int:
        return len(self.boxes)

    @property
    def lo(self) -> np.ndarray:
        return np.array([b[0] for b in self.boxes])

    @property
    def hi(self) -> np.ndarray:
        return np.array([b[1] for b in self.boxes])

    @property
    def volume(self) -> float:
        return float(np.prod(self.hi - self.lo))

    def margin(self, theta) -> float:
        """Distance from ``theta`` to the box boundary (negative outside)."""
        t = np.asarray(theta, dtype=float)
        return float(min(np.min(t - self.lo), np.min(self.hi - t)))

    def check_interior(self, theta, margin: float = 0.0) -> np.ndarray:
        t = as_theta(theta, self.k)
        if self.margin(t) < margin:
            raise DomainError(
                f"theta={t.tolist()} is not inside the domain with margin {margin:g}"
            )
        return t

    def corners(self) -> np.ndarray:
        return np.array(list(product(*self.boxes)), dtype=float)

    def lattice(self, m: int, margin: float = 0.0) -> np.ndarray:
        """Deterministic, knot-avoiding interior points (``m`` per coordinate product)."""
        # golden-ratio offsets keep points away from round-number knots
        frac = (np.arange(m) * 0.6180339887498949 + 0.5) % 1.0
        frac.sort()
        axes = [lo + margin + frac * (hi - lo - 2 * margin) for lo, hi in self.boxes]
        return np.array(list(product(*axes)), dtype=float)


def as_theta(theta, k: int) -> np.ndarray:
    t = np.atleast_1d(np.asarray(theta, dtype=float))
    if t.shape != (k,):
        raise DomainError(f"expected a parameter vector of length {k}, got shape {t.shape}")
    return t


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class ParametricFamily:
    """``theta -> p_theta`` on a box, with optional analytic scores.

    ``evaluator``/``score_fn`` act on a single parameter vector.  The optional
    ``batch_evaluator``/``batch_score_fn`` take an ``(N, k)`` array of
    parameters and return ``(N, d)`` pmfs / ``(N, k, d)`` scores; grid
    pipelines use them when present.
    """

    name: str
    k: int
    d: int
    domain: ParamDomain
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    score_fn: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    batch_evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    batch_score_fn: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def pmf(self, theta) -> np.ndarray:
        t = as_theta(theta, self.k)
        p = np.asarray(self.evaluator(t), dtype=float)
        if p.shape != (self.d,):
            raise DomainError(f"{self.name}: evaluator returned shape {p.shape}, expected ({self.d},)")
        if not np.all(np.isfinite(p)) or p.min() < EPS_FLOOR or abs(p.sum() - 1.0) > SUM_TOL:
            raise DomainError(f"{self.name}: invalid pmf at theta={t.tolist()}: {p.tolist()}")
        return p

    def score(self, theta, h: float = H_SCORE, analytic: bool = True) -> np.ndarray:
        return score_matrix(self, theta, h=h, analytic=analytic)

    def pmf_gradient(self, theta) -> np.ndarray:
        """``d p_theta(x) / d theta_i`` as a k x d array."""
        return self.pmf(theta) * self.score(theta)

    def pmf_many(self, thetas) -> np.ndarray:
        T = np.asarray(thetas, dtype=float).reshape(-1, self.k)
        if self.batch_evaluator is None:
            return np.array([self.pmf(t) for t in T]).reshape(-1, self.d)
        P = np.asarray(self.batch_evaluator(T), dtype=float)
        bad = ~np.all(np.isfinite(P), axis=1) | (P.min(axis=1) < EPS_FLOOR) | (np.abs(P.sum(axis=1) - 1.0) > SUM_TOL)
        if np.any(bad):
            t = T[np.argmax(bad)]
            raise DomainError(f"{self.name}: invalid pmf at theta={t.tolist()}")
        return P

    def score_many(self, thetas) -> np.ndarray:
        T = np.asarray(thetas, dtype=float).reshape(-1, self.k)
        if self.batch_score_fn is None:
            return np.array([self.score(t) for t in T]).reshape(-1, self.k, self.d)
        self.pmf_many(T)
        return np.asarray(self.batch_score_fn(T), dtype=float)


@dataclass(frozen=True)
class FamilySpec:
    """In-memory description of a built-in family."""

    type: str
    d: Optional[int] = None
    n: Optional[int] = None
    base: Optional[tuple[float, ...]] = None
    features: Optional[tuple[tuple[float, ...], ...]] = None


def _builtin(name, k, d, domain, pmf_b, score_b) -> ParametricFamily:
    return ParametricFamily(
        name, k, d, domain,
        evaluator=lambda t: pmf_b(t[None, :])[0],
        score_fn=lambda t: score_b(t[None, :])[0],
        batch_evaluator=pmf_b,
        batch_score_fn=score_b,
    )


def _bernoulli(domain):
    def pmf(T):
        return np.column_stack([1.0 - T[:, 0], T[:, 0]])

    def score(T):
        return np.stack([-1.0 / (1.0 - T[:, 0]), 1.0 / T[:, 0]], axis=-1)[:, None, :]

    return _builtin("bernoulli", 1, 2, domain, pmf, score)


def _categorical(d, domain):
    if d is None or d < 2:
        raise ConfigError("categorical family needs an alphabet size d >= 2")
    idx = np.arange(d - 1)

    def pmf(T):
        return np.column_stack([T, 1.0 - T.sum(axis=1)])

    def score(T):
        s = np.zeros((T.shape[0], d - 1, d))
        s[:, idx, idx] = 1.0 / T
        s[:, :, -1] = (-1.0 / (1.0 - T.sum(axis=1)))[:, None]
        return s

    return _builtin(f"categorical(d={d})", d - 1, d, domain, pmf, score)


def _binomial(n, domain):
    if n is None or n < 1:
        raise ConfigError("binomial family needs a trial count n >= 1")
    x = np.arange(n + 1, dtype=float)
    log_comb = np.array([math.log(math.comb(n, j)) for j in range(n + 1)])

    def pmf(T):
        th = T[:, :1]
        return np.exp(log_comb + x * np.log(th) + (n - x) * np.log1p(-th))

    def score(T):
        th = T[:, :1]
        return (x / th - (n - x) / (1.0 - th))[:, None, :]

    return _builtin(f"binomial(n={n})", 1, n + 1, domain, pmf, score)


def _tilted(base, features, domain):
    if base is None or features is None:
        raise ConfigError("tilted family needs 'base' and 'features'")
    q0 = np.asarray(base, dtype=float)
    F = np.atleast_2d(np.asarray(features, dtype=float))
    if q0.ndim != 1 or q0.size < 2 or np.any(q0 <= 0) or abs(q0.sum() - 1.0) > 1e-9:
        raise ConfigError("tilted base must be a strictly positive pmf")
    if F.ndim != 2 or F.shape[1] != q0.size:
        raise ConfigError(f"features must be k x d with d={q0.size}, got {F.shape}")
    if not np.all(np.isfinite(F)):
        raise ConfigError("features must be finite")
    log_q0 = np.log(q0)
    k, d = F.shape

    def pmf(T):
        z = log_q0 + T @ F
        z -= z.max(axis=1, keepdims=True)
        w = np.exp(z)
        return w / w.sum(axis=1, keepdims=True)

    def score(T):
        P = pmf(T)
        return F[None, :, :] - (P @ F.T)[:, :, None]

    return _builtin(f"tilted(k={k},d={d})", k, d, domain, pmf, score)


def family_from_spec(spec: FamilySpec, domain) -> ParametricFamily:
    """Build a built-in family on ``domain`` and check it is valid on the closed box."""
    if not isinstance(domain, ParamDomain):
        domain = ParamDomain(domain)
    kind = spec.type
    if kind == "bernoulli":
        fam = _bernoulli(domain)
    elif kind == "categorical":
        fam = _categorical(spec.d, domain)
    elif kind == "binomial":
        fam = _binomial(spec.n, domain)
    elif kind == "tilted":
        fam = _tilted(spec.base, spec.features, domain)
    else:
        raise ConfigError(f"unknown family type {kind!r}")
    if domain.k != fam.k:
        raise ConfigError(f"{fam.name} has {fam.k} parameters but the domain has {domain.k}")
    for t in np.vstack([domain.corners(), domain.lattice(5)]):
        try:
            fam.pmf(t)
        except DomainError as exc:
            raise ConfigError(
                f"{fam.name}: domain box is not interior-safe, pmf invalid at theta={t.tolist()}"
            ) from exc
    return fam


# ---------------------------------------------------------------------------
# priors


@dataclass(frozen=True)
class Prior:
    """Prior density on the parameter box.

    ``density_fn`` and ``log_grad_fn`` are vectorized: they map an ``(N, k)``
    array of parameters to ``(N,)`` densities and ``(N, k)`` log-gradients.
    """

    name: str
    domain: ParamDomain
    density_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    log_grad_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def density_many(self, thetas) -> np.ndarray:
        T = np.asarray(thetas, dtype=float).reshape(-1, self.domain.k)
        outside = np.any(T < self.domain.lo, axis=1) | np.any(T > self.domain.hi, axis=1)
        if np.any(outside):
            t = T[np.argmax(outside)]
            raise DomainError(f"{self.name}: theta={t.tolist()} lies outside the prior's box")
        lam = np.asarray(self.density_fn(T), dtype=float).reshape(T.shape[0])
        if not np.all(lam > 0.0):
            t = T[np.argmax(~(lam > 0.0))]
            raise PriorError(f"{self.name}: density <= 0 at theta={t.tolist()}")
        return lam

    def log_gradient_many(self, thetas) -> np.ndarray:
        T = np.asarray(thetas, dtype=float).reshape(-1, self.domain.k)
        return np.asarray(self.log_grad_fn(T), dtype=float).reshape(T.shape)

    def density(self, theta) -> float:
        return float(self.density_many(as_theta(theta, self.domain.k))[0])

    def log_gradient(self, theta) -> np.ndarray:
        return self.log_gradient_many(as_theta(theta, self.domain.k))[0]

    def gradient(self, theta) -> np.ndarray:
        return self.density(theta) * self.log_gradient(theta)


@dataclass(frozen=True)
class PriorSpec:
    """In-memory prior description.  Per-coordinate parameters are tuples of length k."""

    type: str
    domain: tuple[tuple[float, float], ...]
    a: Optional[tuple[float, ...]] = None
    b: Optional[tuple[float, ...]] = None
    knots: Optional[tuple[tuple[float, ...], ...]] = None
    values: Optional[tuple[tuple[float, ...], ...]] = None


def _constant_prior(name, domain, value) -> Prior:
    return Prior(
        name, domain,
        lambda T: np.full(T.shape[0], value),
        lambda T: np.zeros_like(T),
    )


def uniform_prior(domain) -> Prior:
    if not isinstance(domain, ParamDomain):
        domain = ParamDomain(domain)
    return _constant_prior("uniform_box", domain, 1.0 / domain.volume)


def unit_prior(domain) -> Prior:
    """Density identically 1 with zero log-gradient.

    Not normalized on the box; stands in for a prior concentrated at a single
    parameter value, which turns the Bayesian machinery into the deterministic one.
    """
    if not isinstance(domain, ParamDomain):
        domain = ParamDomain(domain)
    return _constant_prior("unit", domain, 1.0)


def _per_coord(values, k, name):
    if values is None or len(values) != k:
        raise ConfigError(f"{name} needs one value per coordinate (k={k})")
    return np.asarray(values, dtype=float)


def trunc_beta_prior(domain, a, b) -> Prior:
    if not isinstance(domain, ParamDomain):
        domain = ParamDomain(domain)
    k = domain.k
    a = _per_coord(a, k, "trunc_beta 'a'")
    b = _per_coord(b, k, "trunc_beta 'b'")
    if np.any(a <= 0) or np.any(b <= 0):
        raise ConfigError("trunc_beta shape parameters must be positive")
    lo, hi = domain.lo, domain.hi
    if np.any(lo <= 0.0) or np.any(hi >= 1.0):
        raise ConfigError("trunc_beta needs a domain box strictly inside (0, 1)")
    # integral of the kernel th**(a-1) (1-th)**(b-1) over [lo, hi]
    norm = special.beta(a, b) * (special.betainc(a, b, hi) - special.betainc(a, b, lo))
    log_norm = float(np.sum(np.log(norm)))

    def density(T):
        return np.exp(np.sum((a - 1) * np.log(T) + (b - 1) * np.log1p(-T), axis=1) - log_norm)

    def log_grad(T):
        return (a - 1) / T - (b - 1) / (1.0 - T)

    label = ",".join(f"{ai:g}/{bi:g}" for ai, bi in zip(a, b))
    return Prior(f"trunc_beta({label})", domain, density, log_grad)


def tabulated_prior(domain, knots, values) -> Prior:
    """Product of piecewise-linear 1-d densities, one table per coordinate.

    The log-gradient uses the slope of the segment to the right of a knot.
    """
    if not isinstance(domain, ParamDomain):
        domain = ParamDomain(domain)
    k = domain.k
    if knots is None or values is None or len(knots) != k or len(values) != k:
        raise ConfigError(f"tabulated prior needs k={k} knot and value tables")
    tables = []
    for i, ((lo, hi), xs, ys) in enumerate(zip(domain.boxes, knots, values)):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.size < 2 or xs.shape != ys.shape:
            raise ConfigError(f"tabulated table {i}: knots and values must be equal-length vectors (>= 2)")
        if np.any(np.diff(xs) <= 0):
            raise ConfigError(f"tabulated table {i}: knots must be strictly increasing")
        if xs[0] != lo or xs[-1] != hi:
            raise ConfigError(f"tabulated table {i}: knots must span the box [{lo}, {hi}] exactly")
        if np.any(ys <= 0.0):
            raise PriorError(f"tabulated table {i}: density values must be positive")
        # exact integral of the interpolant
        area = float(np.sum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs)))
        slopes = np.diff(ys) / np.diff(xs)
        tables.append((xs, ys / area, slopes / area))

    def density(T):
        out = np.ones(T.shape[0])
        for i, (xs, ys, _) in enumerate(tables):
            out *= np.interp(T[:, i], xs, ys)
        return out

    def log_grad(T):
        out = np.empty_like(T)
        for i, (xs, ys, sl) in enumerate(tables):
            j = np.clip(np.searchsorted(xs, T[:, i], side="right") - 1, 0, xs.size - 2)
            out[:, i] = sl[j] / np.interp(T[:, i], xs, ys)
        return out

    return Prior("tabulated", domain, density, log_grad)


def prior_from_spec(spec: PriorSpec) -> Prior:
    domain = ParamDomain(spec.domain)
    if spec.type == "uniform_box":
        return uniform_prior(domain)
    if spec.type == "trunc_beta":
        return trunc_beta_prior(domain, spec.a, spec.b)
    if spec.type == "tabulated":
        return tabulated_prior(domain, spec.knots, spec.values)
    raise ConfigError(f"unknown prior type {spec.type!r}")


@dataclass(frozen=True)
class BayesianModel:
    family: ParametricFamily
    prior: Prior

    def __post_init__(self):
        if self.family.domain != self.prior.domain:
            raise DomainError("family and prior must share the same parameter domain")

    @property
    def domain(self) -> ParamDomain:
        return self.prior.domain

    @property
    def k(self) -> int:
        return self.family.k

    def measure(self, theta) -> np.ndarray:
        """Unnormalized masses ``lambda(theta) * p_theta``."""
        return self.prior.density(theta) * self.family.pmf(theta)


# ---------------------------------------------------------------------------
# scores and representations


def score_matrix(fam: ParametricFamily, theta, h: float = H_SCORE, analytic: bool = True) -> np.ndarray:
    """``entries[i, x] = d/d theta_i log p_theta(x)``, shape (k, d).

    Uses the family's analytic scores when present, otherwise central
    differences of ``log p`` with step ``h`` (requires a margin of ``h``).
    """
    if analytic and fam.score_fn is not None:
        t = as_theta(theta, fam.k)
        fam.pmf(t)
        return np.asarray(fam.score_fn(t), dtype=float).reshape(fam.k, fam.d)
    t = fam.domain.check_interior(theta, h)
    out = np.empty((fam.k, fam.d))
    for i in range(fam.k):
        e = np.zeros(fam.k)
        e[i] = h
        out[i] = (np.log(fam.pmf(t + e)) - np.log(fam.pmf(t - e))) / (2.0 * h)
    return out


def alpha_score_matrix(fam: ParametricFamily, theta, alpha) -> np.ndarray:
    """alpha-representation of the coordinate vectors, shape (k, d).

    ``(p_esc / p) * (score - E_esc[score])``; reduces to the score at alpha = 1.
    """
    a = as_alpha(alpha)
    p = fam.pmf(theta)
    s = score_matrix(fam, theta)
    if a.is_limit:
        pe = p
    else:
        pe = escort_probs(p, a.alpha)
    return (pe / p) * (s - (s @ pe)[:, None])


@dataclass(frozen=True)
class TangentVector:
    """Tangent vector stored by its mixture (m-) representation."""

    rep_m: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.rep_m, dtype=float)
        if v.ndim != 1:
            raise DomainError("rep_m must be a vector")
        if abs(v.sum()) > 1e-10 * max(1.0, np.abs(v).sum()):
            raise DomainError(f"rep_m must sum to 0, sums to {v.sum()!r}")
        object.__setattr__(self, "rep_m", v)

    def rep_e(self, pt) -> np.ndarray:
        m = _masses(pt)
        return self.rep_m / m

    def rep_alpha(self, pt, alpha) -> np.ndarray:
        return alpha_representation(self, pt, alpha)


def _masses(pt) -> np.ndarray:
    if isinstance(pt, PositiveMeasure):
        return pt.masses
    return PositiveMeasure(pt).masses


def alpha_representation(v: TangentVector, pt, alpha) -> np.ndarray:
    """``(p_esc / p) * (X_e - E_esc[X_e])`` with ``p`` the normalization of ``pt``."""
    a = as_alpha(alpha)
    m = _masses(pt)
    if m.size != v.rep_m.size:
        raise DomainError("tangent vector and measure have different lengths")
    p = m / m.sum()
    xe = v.rep_m / m
    pe = p if a.is_limit else escort_probs(p, a.alpha)
    return (pe / p) * (xe - pe @ xe)


# ---------------------------------------------------------------------------
# model validation


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass
class ModelReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def default_grid(domain: ParamDomain) -> QuadratureGrid:
    if domain.k == 1:
        return QuadratureGrid.build("simpson", 201, domain.boxes)
    return QuadratureGrid.build("trapezoid", 101, domain.boxes)


def validate_model(m: BayesianModel, grid: QuadratureGrid | None = None, points: int = 7) -> ModelReport:
    """Run the family/prior invariants; failures are reported, never raised."""
    dom = m.domain
    grid = grid or default_grid(dom)
    fam, pr = m.family, m.prior
    checks: list[CheckResult] = []

    # pmf validity on all quadrature nodes (includes the box boundary)
    worst, ok, bad = 0.0, True, ""
    for t in grid.nodes:
        p = np.asarray(fam.evaluator(t), dtype=float)
        if p.shape != (fam.d,) or not np.all(np.isfinite(p)):
            ok, worst, bad = False, np.inf, f"non-finite or misshaped pmf at theta={t.tolist()}"
            continue
        res = abs(p.sum() - 1.0)
        if p.min() < EPS_FLOOR:
            res = max(res, EPS_FLOOR - p.min())
            if ok:
                bad = f"mass {p.min():.3g} below floor at theta={t.tolist()}"
            ok = False
        worst = max(worst, res)
    ok = ok and worst <= SUM_TOL
    checks.append(CheckResult("pmf_validity", ok, float(worst), bad))

    interior = dom.lattice(points, margin=max(10 * H_SCORE, 1e-3 * float(np.min(dom.hi - dom.lo))))
    score_res, mean_res, grad_res = 0.0, 0.0, 0.0
    for t in interior:
        try:
            s = score_matrix(fam, t)
            s_fd = score_matrix(fam, t, analytic=False)
            p = fam.pmf(t)
        except DomainError:
            score_res = mean_res = np.inf
            continue
        score_res = max(score_res, float(np.max(np.abs(s - s_fd))))
        mean_res = max(mean_res, float(np.max(np.abs(s @ p))))
        g = pr.log_gradient(t)
        g_fd = np.empty(dom.k)
        for i in range(dom.k):
            e = np.zeros(dom.k)
            e[i] = H_SCORE
            g_fd[i] = (math.log(pr.density(t + e)) - math.log(pr.density(t - e))) / (2 * H_SCORE)
        grad_res = max(grad_res, float(np.max(np.abs(g - g_fd))))
    checks.append(CheckResult("score_fd_agreement", score_res <= 1e-6, score_res))
    checks.append(CheckResult("score_zero_mean", mean_res <= 1e-10, mean_res))
    checks.append(CheckResult("prior_log_gradient_fd", grad_res <= 1e-6, grad_res))

    dens = np.asarray(pr.density_fn(np.asarray(grid.nodes)), dtype=float)
    pos = float(dens.min())
    checks.append(CheckResult("prior_positive", pos > 0.0, pos))
    if pr.name == "unit":
        checks.append(CheckResult("prior_normalization", True, 0.0, "unit density is unnormalized by design"))
    else:
        # adaptive quadrature so that coarse pipeline grids do not masquerade as a bad normalizer
        norm = abs(_prior_mass(pr) - 1.0)
        grid_norm = abs(float(grid.integrate(dens)) - 1.0)
        checks.append(CheckResult("prior_normalization", norm <= 1e-6, norm,
                                  f"pipeline-grid residual {grid_norm:.3e}"))
    return ModelReport(checks)


def _prior_mass(pr: Prior) -> float:
    dom = pr.domain

    def f(*t):
        return float(pr.density_fn(np.array([t[::-1]]))[0])

    if dom.k == 1:
        return integrate.quad(f, *dom.boxes[0], limit=200, epsabs=1e-12)[0]
    if dom.k == 2:
        (a, b), (c, d) = dom.boxes
        # dblquad integrates func(y, x); f reverses its arguments back to (x, y)
        return integrate.dblquad(f, a, b, c, d, epsabs=1e-11)[0]
    g = QuadratureGrid.build("simpson", 21, dom.boxes)
    return float(g.integrate(pr.density_fn(np.asarray(g.nodes))))


def random_interior_points(domain: ParamDomain, n: int, rng: np.random.Generator, margin: float) -> np.ndarray:
    lo = domain.lo + margin
    hi = domain.hi - margin
    return lo + (hi - lo) * rng.random((n, domain.k))


__all__ = [
    "ParamDomain", "ParametricFamily", "FamilySpec", "Prior", "PriorSpec", "BayesianModel",
    "TangentVector", "ModelReport", "CheckResult", "family_from_spec", "prior_from_spec",
    "uniform_prior", "unit_prior", "trunc_beta_prior", "tabulated_prior", "score_matrix",
    "alpha_score_matrix", "alpha_representation", "validate_model", "as_theta", "default_grid",
    "random_interior_points", "LIMIT_TOL",
]
