"""Connection and curvature of any :class:`MetricField`.

Christoffel symbols come from the Koszul formula.  The curvature is built
from the Christoffel symbols of the first kind and their exact derivatives
(second metric jets), so no finite differencing is involved:

    R_lkij = d_i c_{l,jk} - d_j c_{l,ik} - c_{m,il} G^m_jk + c_{m,jl} G^m_ik

Sign conventions: ``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
nabla_[X,Y] Z``; the (0,4) tensor is ``R_ijkh = g(R(d_k, d_h) d_j, d_i)``,
equivalently ``g(R(d_i, d_j) d_h, d_k)``, which gives ``R_1212 = mu^2/4`` for
the exceptional metric; Ricci is ``rho_jk = tr(X -> R(X, d_j) d_k)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import kernels
from .metric import MetricSpec, check_nondegenerate, metric_field


class Curvature(NamedTuple):
    metric: np.ndarray
    inverse: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: np.ndarray


def curvature_at(spec: MetricSpec, p, backend=None) -> Curvature:
    """All curvature quantities at ``p`` (a point or a batch) in one pass."""
    g, dg, ddg = metric_field(spec).jets(p)
    check_nondegenerate(g)
    gamma, riem, ric = kernels.curvature(g, dg, ddg, backend=backend)
    ginv = kernels.inv3(g)
    tau = np.einsum("...ij,...ij->...", ginv, ric)
    return Curvature(g, ginv, gamma, riem, ric, tau)


def christoffel(spec: MetricSpec, p, backend=None) -> np.ndarray:
    """``gamma[..., k, i, j]``: coefficient of d_k in nabla_{d_i} d_j."""
    return curvature_at(spec, p, backend).christoffel


def riemann(spec: MetricSpec, p, backend=None) -> np.ndarray:
    return curvature_at(spec, p, backend).riemann


def ricci(spec: MetricSpec, p, backend=None) -> np.ndarray:
    return curvature_at(spec, p, backend).ricci


def scalar_curvature(spec: MetricSpec, p, backend=None):
    tau = curvature_at(spec, p, backend).scalar
    return float(tau) if np.ndim(tau) == 0 else tau


def riemann_symmetry_defect(R: np.ndarray) -> float:
    """Largest violation of the (0,4) symmetries and the first Bianchi identity."""
    anti1 = R + np.swapaxes(R, -4, -3)
    anti2 = R + np.swapaxes(R, -2, -1)
    pair = R - np.moveaxis(R, (-4, -3), (-2, -1))
    bianchi = R + np.einsum("...jkih->...ijkh", R) + np.einsum("...kijh->...ijkh", R)
    return float(max(np.max(np.abs(t)) for t in (anti1, anti2, pair, bianchi)))
