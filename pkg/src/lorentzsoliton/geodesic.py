"""Fixed-step RK4 geodesic integration with first-integral monitoring.

Along a geodesic the energy ``g(v, v)`` and the momenta ``g(v, V_i)`` of the
four Killing fields are constant; their drift is reported, never corrected.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import curvature, kernels
from .errors import BlowUpError, ParameterError
from .jets import as_points
from .metric import Family, MetricSpec, metric_at
from .soliton import killing_basis

CSV_COLUMNS = ("t", "x1", "x2", "x3", "v1", "v2", "v3", "energy", "p1", "p2", "p3", "p4")


class GeodesicState(NamedTuple):
    position: np.ndarray
    velocity: np.ndarray

    @classmethod
    def make(cls, position, velocity) -> "GeodesicState":
        x = as_points(position)
        v = as_points(velocity)
        return cls(x, v)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.position, self.velocity])


@dataclass
class GeodesicTrace:
    t: np.ndarray
    states: np.ndarray  # (n, 6)
    energy: np.ndarray
    momenta: np.ndarray  # (n, 4), zeros for families without a Killing basis

    @property
    def positions(self):
        return self.states[:, :3]

    @property
    def velocities(self):
        return self.states[:, 3:]

    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def momentum_drift(self) -> float:
        return float(np.max(np.abs(self.momenta - self.momenta[0])))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for t, s, e, m in zip(self.t, self.states, self.energy, self.momenta):
                writer.writerow([repr(float(v)) for v in (t, *s, e, *m)])


def _family_code(spec: MetricSpec) -> int:
    if spec.family is Family.MINKOWSKI:
        return kernels.FAMILY_MINKOWSKI
    return kernels.FAMILY_EXCEPTIONAL


def geodesic_rhs(spec: MetricSpec, s: GeodesicState) -> np.ndarray:
    """``(v, -Gamma^k_ij v^i v^j)`` built from the curvature-engine symbols."""
    x = as_points(s.position)
    v = as_points(s.velocity)
    gamma = curvature.christoffel(spec, x)
    acc = -np.einsum("...kij,...i,...j->...k", gamma, v, v)
    return np.concatenate([v, acc], axis=-1)


def first_integrals(spec: MetricSpec, states: np.ndarray):
    """Energy ``g(v, v)`` and Killing momenta ``g(v, V_i)`` for each state."""
    x, v = states[..., :3], states[..., 3:]
    g = metric_at(spec, x)
    gv = np.einsum("...ij,...j->...i", g, v)
    energy = np.einsum("...i,...i->...", gv, v)
    if spec.family is not Family.EXCEPTIONAL:
        return energy, np.zeros(energy.shape + (4,))
    momenta = np.stack([np.einsum("...i,...i->...", gv, V(x)) for V in killing_basis(spec)], axis=-1)
    return energy, momenta


def integrate_geodesic(
    spec: MetricSpec, s0: GeodesicState, T: float, h: float, backend: Optional[str] = None
) -> GeodesicTrace:
    if not (T > 0 and math.isfinite(T)):
        raise ParameterError(f"T must be positive and finite, got {T}")
    if not (h > 0 and math.isfinite(h)):
        raise ParameterError(f"h must be positive and finite, got {h}")
    if h > T:
        raise ParameterError(f"h={h} exceeds T={T}")
    n_steps = int(round(T / h))
    y0 = GeodesicState.make(*s0).as_array()
    mu = spec.mu if spec.is_exceptional else 0.0
    eps = spec.eps if spec.is_exceptional else 0
    states, bad = kernels.rk4_geodesic(_family_code(spec), mu, eps, y0, h, n_steps, backend=backend)
    if bad >= 0:
        raise BlowUpError(f"non-finite state after t={bad * h}", last_t=bad * h)
    t = h * np.arange(n_steps + 1)
    energy, momenta = first_integrals(spec, states)
    return GeodesicTrace(t, states, energy, momenta)
