"""Ricci soliton fields of the exceptional metric and the associated checks.

For ``mu != 0`` and ``eps = +-1`` every field in the four-parameter family
below solves ``L_X g + rho = lambda g`` with ``lambda = -mu^2/2``.  The
branch is fixed by the sign of ``eps * mu``: exponentials in ``x1`` when it
is negative, sines and cosines when it is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import curvature
from .fields import VectorField
from .jets import ScalarField, as_points, cos, exp, sin
from .lie import exterior_derivative, flat, lie_derivative_metric
from .metric import MetricSpec, metric_at

HYPERBOLIC = "hyperbolic"
TRIGONOMETRIC = "trigonometric"


def branch_of(spec: MetricSpec) -> str:
    spec.require_exceptional("soliton analysis")
    return HYPERBOLIC if spec.eps * spec.mu < 0 else TRIGONOMETRIC


def canonical_lambda(spec: MetricSpec) -> float:
    spec.require_exceptional("soliton analysis")
    return -0.5 * spec.mu**2


@dataclass(frozen=True)
class SolitonFamily:
    spec: MetricSpec
    k: Tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    lam: Optional[float] = field(default=None)

    def __post_init__(self):
        self.spec.require_exceptional("SolitonFamily")
        k = tuple(float(v) for v in self.k)
        if len(k) != 4:
            raise ValueError("k must have four entries")
        object.__setattr__(self, "k", k)
        if self.lam is None:
            object.__setattr__(self, "lam", canonical_lambda(self.spec))

    @property
    def branch(self) -> str:
        return branch_of(self.spec)

    @property
    def expanding(self) -> bool:
        return self.lam < 0


def soliton_field(fam: SolitonFamily) -> VectorField:
    mu, eps = fam.spec.mu, fam.spec.eps
    k1, k2, k3, k4 = fam.k
    if fam.branch == HYPERBOLIC:
        s = math.sqrt(-eps * mu)

        def X1(x1, x2, x3):
            return (k1 * exp(s * x1) + k2 * exp(-s * x1) + k3) / mu

        def X2(x1, x2, x3):
            a, b = exp(s * x1), exp(-s * x1)
            return -(k1 * (mu * s * x2 - eps) * a - k2 * (mu * s * x2 + eps) * b) / mu**2 + k4 * exp(-mu * x3)

        def X3(x1, x2, x3):
            return s / mu**2 * (k1 * exp(s * x1) - k2 * exp(-s * x1)) - mu / 2

    else:
        s = math.sqrt(eps * mu)

        def X1(x1, x2, x3):
            return (k1 * cos(s * x1) + k2 * sin(s * x1) + k3) / mu

        def X2(x1, x2, x3):
            c, sn = cos(s * x1), sin(s * x1)
            return (
                k1 * (mu * s * x2 * sn + eps * c) - k2 * (mu * s * x2 * c - eps * sn)
            ) / mu**2 + k4 * exp(-mu * x3)

        def X3(x1, x2, x3):
            return s / mu**2 * (-k1 * sin(s * x1) + k2 * cos(s * x1)) - mu / 2

    return VectorField(
        [ScalarField(X1, "X1"), ScalarField(X2, "X2"), ScalarField(X3, "X3")],
        name=f"soliton{fam.k}",
    )


def killing_basis(spec: MetricSpec) -> Tuple[VectorField, VectorField, VectorField, VectorField]:
    """Derivatives of the soliton field with respect to k1..k4.

    Differences of soliton fields solve ``L_V g = 0``, so these four fields
    span the Killing algebra.
    """
    mu, eps = spec.mu, spec.eps
    if branch_of(spec) == HYPERBOLIC:
        s = math.sqrt(-eps * mu)
        V1 = VectorField(
            [
                lambda x1, x2, x3: exp(s * x1) / mu,
                lambda x1, x2, x3: -(mu * s * x2 - eps) * exp(s * x1) / mu**2,
                lambda x1, x2, x3: s * exp(s * x1) / mu**2,
            ],
            name="V1",
        )
        V2 = VectorField(
            [
                lambda x1, x2, x3: exp(-s * x1) / mu,
                lambda x1, x2, x3: (mu * s * x2 + eps) * exp(-s * x1) / mu**2,
                lambda x1, x2, x3: -s * exp(-s * x1) / mu**2,
            ],
            name="V2",
        )
    else:
        s = math.sqrt(eps * mu)
        V1 = VectorField(
            [
                lambda x1, x2, x3: cos(s * x1) / mu,
                lambda x1, x2, x3: (mu * s * x2 * sin(s * x1) + eps * cos(s * x1)) / mu**2,
                lambda x1, x2, x3: -s * sin(s * x1) / mu**2,
            ],
            name="V1",
        )
        V2 = VectorField(
            [
                lambda x1, x2, x3: sin(s * x1) / mu,
                lambda x1, x2, x3: -(mu * s * x2 * cos(s * x1) - eps * sin(s * x1)) / mu**2,
                lambda x1, x2, x3: s * cos(s * x1) / mu**2,
            ],
            name="V2",
        )
    V3 = VectorField([1.0 / mu, 0.0, 0.0], name="V3")
    V4 = VectorField([0.0, lambda x1, x2, x3: exp(-mu * x3), 0.0], name="V4")
    return V1, V2, V3, V4


def soliton_residual(spec: MetricSpec, X: VectorField, lam: float, p) -> np.ndarray:
    """``L_X g + rho - lam g`` at ``p``; vanishes exactly on solitons."""
    pts = as_points(p)
    return lie_derivative_metric(spec, X, pts) + curvature.ricci(spec, pts) - lam * metric_at(spec, pts)


def killing_residual(spec: MetricSpec, V: VectorField, p) -> np.ndarray:
    """Largest entry of ``|L_V g|`` at each point."""
    return np.max(np.abs(lie_derivative_metric(spec, V, p)), axis=(-2, -1))


def gradient_obstruction(spec: MetricSpec, X: VectorField, p) -> np.ndarray:
    """Largest entry of ``|d(X_flat)|``; positive means X is not a gradient."""
    out = np.max(np.abs(exterior_derivative(flat(spec, X), p)), axis=(-2, -1))
    return float(out) if out.ndim == 0 else out


def einstein_residual(spec: MetricSpec, p) -> np.ndarray:
    """``rho - (tau/3) g``; identically zero iff the metric is Einstein."""
    c = curvature.curvature_at(spec, p)
    return c.ricci - (c.scalar / 3.0)[..., None, None] * c.metric
