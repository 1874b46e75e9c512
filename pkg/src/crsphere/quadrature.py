"""Floating-point product quadrature on the unit sphere S^2.

Gauss-Legendre in z = cos(polar angle) times the uniform trapezoid rule in the
azimuth.  Only used to cross-check the exact integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .monomials import Polynomial


def gauss_legendre(n: int, tol: float = 1e-15, max_iter: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1] (nodes ascending)."""
    if n < 1:
        raise ValueError("need at least one node")
    nodes = np.empty(n)
    weights = np.empty(n)
    for i in range(n):
        # Chebyshev-type initial estimate for the (i+1)-th largest root
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(max_iter):
            p0, p1 = 1.0, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if abs(dx) < tol:
                break
        p0, p1 = 1.0, x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        nodes[i] = x
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(nodes)
    return nodes[order], weights[order]


@dataclass(frozen=True)
class QuadratureRule:
    z: np.ndarray
    wz: np.ndarray
    k: int

    @property
    def exactness_degree(self) -> int:
        return min(2 * len(self.z) - 1, self.k - 1)

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """(N, 3) array of nodes and (N,) weights, summing to 4*pi."""
        theta = 2.0 * np.pi * np.arange(self.k) / self.k
        s = np.sqrt(1.0 - self.z**2)
        x = np.outer(s, np.cos(theta)).ravel()
        y = np.outer(s, np.sin(theta)).ravel()
        zz = np.repeat(self.z, self.k)
        w = np.repeat(self.wz, self.k) * (2.0 * np.pi / self.k)
        return np.column_stack([x, y, zz]), w


@lru_cache(maxsize=32)
def sphere_rule(n: int, k: int) -> QuadratureRule:
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    z, w = gauss_legendre(n)
    return QuadratureRule(z, w, k)


def quad_integrate(P: Polynomial, n: int = 8, k: int = 16) -> float:
    """Approximate int_{S^2} P dM (absolute area units, total 4*pi)."""
    pts, w = sphere_rule(n, k).points()
    vals = np.zeros(len(w))
    for a, c in P.items():
        vals += float(c) * pts[:, 0] ** a[0] * pts[:, 1] ** a[1] * pts[:, 2] ** a[2]
    return float(np.dot(w, vals))
