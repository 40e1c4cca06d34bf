"""Lie brackets, Lie derivative of the metric, lowering and exterior derivative."""

from __future__ import annotations

import numpy as np

from .fields import OneForm, VectorField
from .jets import ScalarField, as_points
from .metric import COMPONENTS, MetricSpec, metric_field


def lie_bracket(V: VectorField, W: VectorField, p) -> np.ndarray:
    """``[V, W]^i = V^j d_j W^i - W^j d_j V^i``; shape ``(..., 3)``."""
    pts = as_points(p)
    v, dv = V.jacobian(pts)
    w, dw = W.jacobian(pts)
    return np.einsum("...j,...ij->...i", v, dw) - np.einsum("...j,...ij->...i", w, dv)


def lie_derivative_metric(spec: MetricSpec, X: VectorField, p) -> np.ndarray:
    """``(L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k``."""
    pts = as_points(p)
    g, dg, _ = metric_field(spec).jets(pts)
    x, dx = X.jacobian(pts)
    transport = np.einsum("...kj,...ki->...ij", g, dx)
    out = np.einsum("...k,...kij->...ij", x, dg) + transport + np.swapaxes(transport, -1, -2)
    return 0.5 * (out + np.swapaxes(out, -1, -2))


def flat(spec: MetricSpec, X: VectorField) -> OneForm:
    """Metric lowering ``w_i = g_ij X^j`` as exact component fields."""
    mf = metric_field(spec)
    gfn = {}
    for (i, j), f in zip(COMPONENTS, mf.components):
        gfn[i, j] = gfn[j, i] = f.fn
    xfn = [c.fn for c in X.components]

    def component(i):
        def w(x1, x2, x3):
            return sum(gfn[i, j](x1, x2, x3) * xfn[j](x1, x2, x3) for j in range(3))

        return ScalarField(w, f"flat_{i + 1}")

    return OneForm([component(i) for i in range(3)], name=f"flat({X.name})" if X.name else "")


def exterior_derivative(w: OneForm, p) -> np.ndarray:
    """``A_ij = d_i w_j - d_j w_i``; shape ``(..., 3, 3)``."""
    _, dw = w.jacobian(p)
    # dw[..., j, i] = d_i w_j
    return np.swapaxes(dw, -1, -2) - dw
