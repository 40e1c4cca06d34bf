"""Second-order forward differentiation on R^3.

A :class:`Jet2` carries the value, gradient and Hessian of a scalar field at
one point or at a batch of points (leading axes).  Arithmetic on jets follows
the Leibniz and chain rules exactly, so a field written as an expression in
the coordinate jets evaluates to its exact 2-jet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, ParameterError


class Point3(NamedTuple):
    x1: float
    x2: float
    x3: float


def as_points(p) -> np.ndarray:
    """Validate and convert a point (or an ``(..., 3)`` batch) to float64."""
    arr = np.asarray(p, dtype=np.float64)
    if arr.shape[-1:] != (3,):
        raise DomainError(f"points must have a trailing axis of length 3, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("point coordinates must be finite")
    return arr


def _const_array(c, shape):
    return np.broadcast_to(np.asarray(c, dtype=np.float64), shape)


@dataclass(frozen=True, eq=False)
class Jet2:
    value: np.ndarray
    grad: np.ndarray
    hess: np.ndarray

    def __post_init__(self):
        value = np.asarray(self.value, dtype=np.float64)
        grad = np.asarray(self.grad, dtype=np.float64)
        hess = np.asarray(self.hess, dtype=np.float64)
        # exact for already-symmetric input
        hess = 0.5 * (hess + np.swapaxes(hess, -1, -2))
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "grad", grad)
        object.__setattr__(self, "hess", hess)

    @classmethod
    def constant(cls, c, shape=()) -> "Jet2":
        value = np.array(_const_array(c, shape))
        return cls(value, np.zeros(shape + (3,)), np.zeros(shape + (3, 3)))

    @classmethod
    def variable(cls, points: np.ndarray, axis: int) -> "Jet2":
        """Coordinate jet ``x_axis`` at ``points`` of shape ``(..., 3)``."""
        shape = points.shape[:-1]
        grad = np.zeros(shape + (3,))
        grad[..., axis] = 1.0
        return cls(points[..., axis].copy(), grad, np.zeros(shape + (3, 3)))

    @property
    def shape(self):
        return self.value.shape

    def _lift(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        return Jet2.constant(other, np.broadcast_shapes(np.shape(other), self.shape))

    def compose(self, f0, f1, f2) -> "Jet2":
        """Chain rule for a univariate function with derivatives f0, f1, f2 at ``value``."""
        g = self.grad
        hess = f1[..., None, None] * self.hess + f2[..., None, None] * (g[..., :, None] * g[..., None, :])
        return Jet2(f0, f1[..., None] * g, hess)

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Jet2(self.value - o.value, self.grad - o.grad, self.hess - o.hess)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            c = np.asarray(other, dtype=np.float64)
            return Jet2(self.value * c, self.grad * c[..., None], self.hess * c[..., None, None])
        a, b = self, other
        outer = a.grad[..., :, None] * b.grad[..., None, :]
        hess = (
            a.value[..., None, None] * b.hess
            + b.value[..., None, None] * a.hess
            + (outer + np.swapaxes(outer, -1, -2))
        )
        grad = a.value[..., None] * b.grad + b.value[..., None] * a.grad
        return Jet2(a.value * b.value, grad, hess)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        v = self.value
        return self.compose(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other):
        if not isinstance(other, Jet2):
            return self * (1.0 / np.asarray(other, dtype=np.float64))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        v = self.value
        n = float(n)
        zero = np.zeros_like(v)
        f1 = n * v ** (n - 1) if n != 0 else zero
        f2 = n * (n - 1) * v ** (n - 2) if n not in (0.0, 1.0) else zero
        return self.compose(v**n, f1, f2)

    def __repr__(self):
        return f"Jet2(value={self.value!r}, grad={self.grad!r}, hess={self.hess!r})"


def exp(u):
    if isinstance(u, Jet2):
        e = np.exp(u.value)
        return u.compose(e, e, e)
    return np.exp(u)


def sin(u):
    if isinstance(u, Jet2):
        s, c = np.sin(u.value), np.cos(u.value)
        return u.compose(s, c, -s)
    return np.sin(u)


def cos(u):
    if isinstance(u, Jet2):
        s, c = np.sin(u.value), np.cos(u.value)
        return u.compose(c, -s, -c)
    return np.cos(u)


class ScalarField:
    """Smooth function on R^3 given as an expression in the coordinates.

    ``fn(x1, x2, x3)`` must be written with ``+ - * /``, ``**`` and the
    :func:`exp`, :func:`sin`, :func:`cos` helpers of this module so that it
    evaluates both on plain arrays and on :class:`Jet2` coordinates.
    """

    def __init__(self, fn: Callable, name: str = ""):
        self.fn = fn
        self.name = name or getattr(fn, "__name__", "field")

    @classmethod
    def constant(cls, c: float, name: str = "") -> "ScalarField":
        return cls(lambda x1, x2, x3: c, name or f"const({c})")

    def __call__(self, p) -> np.ndarray:
        pts = as_points(p)
        out = self.fn(pts[..., 0], pts[..., 1], pts[..., 2])
        return np.array(_const_array(out, pts.shape[:-1]))

    def jet(self, p) -> Jet2:
        pts = as_points(p)
        shape = pts.shape[:-1]
        out = self.fn(*(Jet2.variable(pts, i) for i in range(3)))
        if not isinstance(out, Jet2):
            return Jet2.constant(out, shape)
        if out.shape != shape:
            # expressions that ignore some coordinates may broadcast short
            out = Jet2(
                np.broadcast_to(out.value, shape),
                np.broadcast_to(out.grad, shape + (3,)),
                np.broadcast_to(out.hess, shape + (3, 3)),
            )
        return out

    def __repr__(self):
        return f"ScalarField({self.name})"


def jet2_eval(f: ScalarField, p) -> Jet2:
    """Exact 2-jet of ``f`` at ``p`` (a point or an ``(N, 3)`` batch)."""
    return f.jet(p)


def fd_jet2(f: ScalarField, p, h: float = 1e-4) -> Jet2:
    """Central-difference 2-jet of ``f``; uses only point values of ``f``.

    Gradient and Hessian are O(h^2) accurate; the value is exact.
    """
    if not (h > 0) or not np.isfinite(h):
        raise ParameterError(f"step h must be positive and finite, got {h}")
    pts = as_points(p)
    shape = pts.shape[:-1]
    f0 = f(pts)
    steps = np.eye(3) * h
    plus = [f(pts + steps[i]) for i in range(3)]
    minus = [f(pts - steps[i]) for i in range(3)]
    grad = np.empty(shape + (3,))
    hess = np.empty(shape + (3, 3))
    for i in range(3):
        grad[..., i] = (plus[i] - minus[i]) / (2 * h)
        hess[..., i, i] = (plus[i] - 2 * f0 + minus[i]) / h**2
        for j in range(i + 1, 3):
            d = (
                f(pts + steps[i] + steps[j])
                - f(pts + steps[i] - steps[j])
                - f(pts - steps[i] + steps[j])
                + f(pts - steps[i] - steps[j])
            ) / (4 * h**2)
            hess[..., i, j] = d
            hess[..., j, i] = d
    return Jet2(f0, grad, hess)
