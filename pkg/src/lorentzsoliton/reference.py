"""Closed-form reference values for the exceptional metric.

These are hand-derived tables used to check the generic engine: connection
coefficients, (0,4) curvature, Ricci tensor, inverse metric, soliton
constant and Einstein defect.  Every function is vectorized over a trailing
point axis of length 3.
"""

from __future__ import annotations

import numpy as np

from .jets import as_points
from .metric import MetricSpec


def _coords(spec: MetricSpec, p):
    spec.require_exceptional("closed-form reference")
    pts = as_points(p)
    return spec.mu, spec.eps, pts[..., 0], pts[..., 1], pts[..., 2]


def inverse_metric(spec: MetricSpec, p) -> np.ndarray:
    mu, eps, _, x2, x3 = _coords(spec, p)
    E = np.exp(-2 * mu * x3)
    out = np.zeros(x2.shape + (3, 3))
    out[..., 0, 1] = out[..., 1, 0] = 1.0
    out[..., 1, 1] = mu**2 * x2**2 - (eps / mu) * (E - 1.0)
    out[..., 1, 2] = out[..., 2, 1] = -mu * x2
    out[..., 2, 2] = 1.0
    return out


def christoffel(spec: MetricSpec, p) -> np.ndarray:
    """``gamma[..., k, i, j]`` = coefficient of d_k in nabla_{d_i} d_j."""
    mu, eps, _, x2, x3 = _coords(spec, p)
    E = np.exp(-2 * mu * x3)
    G = np.zeros(x2.shape + (3, 3, 3))

    def put(k, i, j, v):
        G[..., k, i, j] = v
        G[..., k, j, i] = v

    put(1, 0, 0, -eps * mu * x2 * E)
    put(2, 0, 0, eps * E)
    put(1, 0, 1, -0.5 * mu**2 * x2)
    put(2, 0, 1, 0.5 * mu)
    put(0, 0, 2, -0.5 * mu)
    put(1, 0, 2, -0.5 * (eps * E + eps + mu**3 * x2**2))
    put(2, 0, 2, 0.5 * mu**2 * x2)
    put(1, 1, 2, 0.5 * mu)
    return G


def _fill_riemann(R, i, j, k, h, v):
    # R_ijkh = -R_jikh = -R_ijhk = R_khij
    for (a, b, c, d), s in (
        ((i, j, k, h), 1),
        ((j, i, k, h), -1),
        ((i, j, h, k), -1),
        ((j, i, h, k), 1),
    ):
        R[..., a, b, c, d] = s * v
        R[..., c, d, a, b] = s * v


def riemann(spec: MetricSpec, p) -> np.ndarray:
    """Full (0,4) tensor; components not generated by the four listed ones vanish."""
    mu, eps, _, x2, x3 = _coords(spec, p)
    E = np.exp(-2 * mu * x3)
    R = np.zeros(x2.shape + (3, 3, 3, 3))
    one = np.ones_like(x2)
    _fill_riemann(R, 0, 1, 0, 1, 0.25 * mu**2 * one)
    _fill_riemann(R, 0, 2, 0, 2, 0.25 * mu * (mu**3 * x2**2 - 5 * eps * E + eps))
    _fill_riemann(R, 0, 1, 0, 2, 0.25 * mu**3 * x2)
    _fill_riemann(R, 0, 2, 1, 2, -0.25 * mu**2 * one)
    return R


def ricci(spec: MetricSpec, p) -> np.ndarray:
    mu, eps, _, x2, x3 = _coords(spec, p)
    E = np.exp(-2 * mu * x3)
    out = np.zeros(x2.shape + (3, 3))
    out[..., 0, 0] = -0.5 * eps * mu * (3 * E - 1.0)
    out[..., 0, 1] = out[..., 1, 0] = -0.5 * mu**2
    out[..., 0, 2] = out[..., 2, 0] = -0.5 * mu**3 * x2
    out[..., 2, 2] = -0.5 * mu**2
    return out


def scalar_curvature(spec: MetricSpec) -> float:
    spec.require_exceptional("closed-form reference")
    return -1.5 * spec.mu**2


def soliton_constant(spec: MetricSpec) -> float:
    spec.require_exceptional("closed-form reference")
    return -0.5 * spec.mu**2


def einstein_defect_11(spec: MetricSpec, p) -> np.ndarray:
    """The only nonzero entry of ``ricci - (tau/3) g``."""
    mu, eps, _, _, x3 = _coords(spec, p)
    return -eps * mu * np.exp(-2 * mu * x3)
