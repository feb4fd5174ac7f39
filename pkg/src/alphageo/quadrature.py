"""Tensor-product composite quadrature over a parameter box."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import ConfigError

RULES = ("trapezoid", "simpson")


def rule_weights(rule: str, n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite rule with ``n`` equispaced nodes on [lo, hi]."""
    if rule not in RULES:
        raise ConfigError(f"unknown quadrature rule {rule!r}")
    if not lo < hi:
        raise ConfigError(f"empty interval [{lo}, {hi}]")
    if n == 1:
        # degenerate single node: midpoint times the interval length
        return np.array([0.5 * (lo + hi)]), np.array([hi - lo])
    if n < 2:
        raise ConfigError("need at least one node")
    x = np.linspace(lo, hi, n)
    h = (hi - lo) / (n - 1)
    if rule == "trapezoid":
        w = np.full(n, h)
        w[0] = w[-1] = 0.5 * h
    else:
        if n % 2 == 0 or n < 3:
            raise ConfigError(f"simpson rule needs an odd node count >= 3, got {n}")
        w = np.empty(n)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w[0] = w[-1] = 1.0
        w *= h / 3.0
    return x, w


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes and positive weights over a box; weights sum to the box volume."""

    rule: str
    n: int
    boxes: tuple[tuple[float, float], ...]
    nodes: np.ndarray = field(repr=False, compare=False)
    weights: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def build(cls, rule: str, n: int, boxes) -> "QuadratureGrid":
        boxes = tuple((float(lo), float(hi)) for lo, hi in boxes)
        axes = [rule_weights(rule, n, lo, hi) for lo, hi in boxes]
        # row-major node order: last coordinate varies fastest
        nodes = np.array(list(product(*(x for x, _ in axes))), dtype=float)
        weights = np.array([np.prod(ws) for ws in product(*(w for _, w in axes))], dtype=float)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        return cls(rule, int(n), boxes, nodes, weights)

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.boxes]))

    def __len__(self):
        return self.weights.size

    def integrate(self, values) -> np.ndarray:
        """Weighted sum of per-node values (scalars or arrays), in node order."""
        values = np.asarray(values, dtype=float)
        return np.tensordot(self.weights, values, axes=(0, 0))
