"""Vector fields and one-forms as triples of scalar fields."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .jets import ScalarField, as_points


def _as_field(c) -> ScalarField:
    if isinstance(c, ScalarField):
        return c
    if callable(c):
        return ScalarField(c)
    return ScalarField.constant(float(c))


class _Triple:
    """Three component fields in the coordinate (co)frame."""

    def __init__(self, components: Sequence, name: str = ""):
        if len(components) != 3:
            raise ValueError("exactly three components are required")
        self.components = tuple(_as_field(c) for c in components)
        self.name = name

    def __call__(self, p) -> np.ndarray:
        """Component values, shape ``(..., 3)``."""
        return np.stack([c(p) for c in self.components], axis=-1)

    def jacobian(self, p):
        """Values ``(..., 3)`` and first derivatives ``d[..., i, j] = d_j X^i``."""
        jets = [c.jet(p) for c in self.components]
        value = np.stack([j.value for j in jets], axis=-1)
        d = np.stack([j.grad for j in jets], axis=-2)
        return value, d

    def _combine(self, other, op):
        pairs = zip(self.components, other.components)
        return type(self)(
            [ScalarField(lambda x1, x2, x3, a=a, b=b: op(a.fn(x1, x2, x3), b.fn(x1, x2, x3))) for a, b in pairs]
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, c: float):
        return type(self)([ScalarField(lambda x1, x2, x3, a=a: c * a.fn(x1, x2, x3)) for a in self.components])

    __rmul__ = __mul__

    def __repr__(self):
        label = self.name or ", ".join(c.name for c in self.components)
        return f"{type(self).__name__}({label})"


class VectorField(_Triple):
    """``X = X^i d_i``."""

    @classmethod
    def coordinate(cls, i: int) -> "VectorField":
        comps = [0.0, 0.0, 0.0]
        comps[i] = 1.0
        return cls(comps, name=f"d{i + 1}")

    @classmethod
    def zero(cls) -> "VectorField":
        return cls([0.0, 0.0, 0.0], name="0")


class OneForm(_Triple):
    """``w = w_i dx^i``."""

    def pair(self, X: VectorField, p) -> np.ndarray:
        """Contraction ``w(X)`` at ``p``."""
        return np.sum(self(p) * X(as_points(p)), axis=-1)
