"""Metric families on the global chart R^3 and the frame of the exceptional metric.

The exceptional family, for ``mu != 0`` and ``eps = +-1``, is

    g = (eps/mu)(exp(-2 mu x3) - 1) dx1^2 + 2 dx1 dx2 + 2 mu x2 dx1 dx3 + dx3^2

with signature (-, +, +) and determinant -1 everywhere.  Minkowski space
``diag(-1, 1, 1)`` is kept as a flat control.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from . import kernels
from .errors import DegeneracyError, SpecError, UnsupportedFamilyError
from .fields import OneForm, VectorField
from .jets import ScalarField, as_points, exp

DET_FLOOR = 1e-12

# (i, j) index pairs of the six independent components, in storage order
COMPONENTS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class Family(str, Enum):
    EXCEPTIONAL = "exceptional"
    MINKOWSKI = "minkowski"


@dataclass(frozen=True)
class MetricSpec:
    family: Family = Family.EXCEPTIONAL
    mu: float = 1.0
    eps: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.EXCEPTIONAL:
            if not isinstance(self.mu, numbers.Real) or not math.isfinite(self.mu) or self.mu == 0:
                raise SpecError(f"mu must be a finite nonzero real, got {self.mu!r}")
            if self.eps not in (-1, 1):
                raise SpecError(f"eps must be -1 or +1, got {self.eps!r}")
            object.__setattr__(self, "mu", float(self.mu))
            object.__setattr__(self, "eps", int(self.eps))

    @classmethod
    def exceptional(cls, mu: float, eps: int) -> "MetricSpec":
        return cls(Family.EXCEPTIONAL, mu, eps)

    @classmethod
    def minkowski(cls) -> "MetricSpec":
        return cls(Family.MINKOWSKI, 0.0, 0)

    @property
    def is_exceptional(self) -> bool:
        return self.family is Family.EXCEPTIONAL

    def require_exceptional(self, what: str):
        if not self.is_exceptional:
            raise UnsupportedFamilyError(f"{what} is only defined for the exceptional family")

    def as_dict(self) -> dict:
        if self.is_exceptional:
            return {"family": self.family.value, "mu": self.mu, "eps": self.eps}
        return {"family": self.family.value}


class MetricField:
    """Six component scalar fields ``g_ij`` (i <= j) with exact 2-jets."""

    def __init__(self, spec: MetricSpec, components: Tuple[ScalarField, ...]):
        self.spec = spec
        self.components = components

    def __call__(self, p) -> np.ndarray:
        pts = as_points(p)
        g = np.empty(pts.shape[:-1] + (3, 3))
        for (i, j), f in zip(COMPONENTS, self.components):
            g[..., i, j] = g[..., j, i] = f(pts)
        return g

    def jets(self, p):
        """Return ``g``, ``dg`` and ``ddg`` with ``dg[..., m, i, j] = d_m g_ij``
        and ``ddg[..., m, n, i, j] = d_m d_n g_ij``."""
        pts = as_points(p)
        shape = pts.shape[:-1]
        g = np.empty(shape + (3, 3))
        dg = np.empty(shape + (3, 3, 3))
        ddg = np.empty(shape + (3, 3, 3, 3))
        for (i, j), f in zip(COMPONENTS, self.components):
            jet = f.jet(pts)
            for a, b in {(i, j), (j, i)}:
                g[..., a, b] = jet.value
                dg[..., :, a, b] = jet.grad
                ddg[..., :, :, a, b] = jet.hess
        return g, dg, ddg


def metric_field(spec: MetricSpec) -> MetricField:
    if spec.family is Family.MINKOWSKI:
        values = (-1.0, 0.0, 0.0, 1.0, 0.0, 1.0)
        comps = tuple(ScalarField.constant(v, f"g{i + 1}{j + 1}") for v, (i, j) in zip(values, COMPONENTS))
        return MetricField(spec, comps)
    mu, eps = spec.mu, spec.eps
    comps = (
        ScalarField(lambda x1, x2, x3: (eps / mu) * (exp(-2 * mu * x3) - 1.0), "g11"),
        ScalarField.constant(1.0, "g12"),
        ScalarField(lambda x1, x2, x3: mu * x2, "g13"),
        ScalarField.constant(0.0, "g22"),
        ScalarField.constant(0.0, "g23"),
        ScalarField.constant(1.0, "g33"),
    )
    return MetricField(spec, comps)


def metric_at(spec: MetricSpec, p) -> np.ndarray:
    """Metric matrix at ``p``; shape ``(..., 3, 3)``."""
    return metric_field(spec)(p)


def check_nondegenerate(g: np.ndarray) -> np.ndarray:
    det = kernels.det3(g)
    if np.any(~(np.abs(det) >= DET_FLOOR)):
        raise DegeneracyError(f"metric determinant below {DET_FLOOR:g} in magnitude")
    return det


def metric_inverse(spec: MetricSpec, p) -> np.ndarray:
    g = metric_at(spec, p)
    check_nondegenerate(g)
    return kernels.inv3(g)


@dataclass(frozen=True)
class Frame:
    """Pseudo-orthonormal frame ``u1, u2, u3`` and its dual coframe."""

    u: Tuple[VectorField, VectorField, VectorField]
    theta: Tuple[OneForm, OneForm, OneForm]

    def vectors(self, p) -> np.ndarray:
        """``out[..., a, i]`` is the i-th coordinate component of ``u_a``."""
        return np.stack([u(p) for u in self.u], axis=-2)

    def covectors(self, p) -> np.ndarray:
        return np.stack([t(p) for t in self.theta], axis=-2)


def frame_fields(spec: MetricSpec) -> Frame:
    """Left-invariant frame of the exceptional metric in chart coordinates.

    ``<u1, u2> = <u3, u3> = 1`` with all other products zero, and
    ``[u1,u2] = mu u3``, ``[u2,u3] = mu u2``, ``[u3,u1] = mu u1 + eps u2``.
    """
    spec.require_exceptional("frame_fields")
    mu, eps = spec.mu, spec.eps

    def u1_2(x1, x2, x3):
        return ((mu**3 * x2 * x2 + eps) * exp(mu * x3) - eps * exp(-mu * x3)) / (2 * mu)

    u1 = VectorField(
        [
            ScalarField(lambda x1, x2, x3: exp(mu * x3), "u1^1"),
            ScalarField(u1_2, "u1^2"),
            ScalarField(lambda x1, x2, x3: -mu * x2 * exp(mu * x3), "u1^3"),
        ],
        name="u1",
    )
    u2 = VectorField([0.0, ScalarField(lambda x1, x2, x3: exp(-mu * x3), "u2^2"), 0.0], name="u2")
    u3 = VectorField.coordinate(2)
    u3.name = "u3"

    theta1 = OneForm([ScalarField(lambda x1, x2, x3: exp(-mu * x3), "th1_1"), 0.0, 0.0], name="theta1")
    theta2 = OneForm(
        [
            ScalarField(
                lambda x1, x2, x3: -((mu**3 * x2 * x2 + eps) * exp(mu * x3) - eps * exp(-mu * x3)) / (2 * mu),
                "th2_1",
            ),
            ScalarField(lambda x1, x2, x3: exp(mu * x3), "th2_2"),
            0.0,
        ],
        name="theta2",
    )
    theta3 = OneForm([ScalarField(lambda x1, x2, x3: mu * x2, "th3_1"), 0.0, 1.0], name="theta3")
    return Frame((u1, u2, u3), (theta1, theta2, theta3))
