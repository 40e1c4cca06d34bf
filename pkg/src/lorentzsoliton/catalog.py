"""Named scalar fields used to cross-check analytic jets against finite differences."""

from __future__ import annotations

from typing import Dict

from .jets import ScalarField, exp
from .metric import MetricSpec, frame_fields, metric_field
from .soliton import SolitonFamily, killing_basis, soliton_field

# |mu| <= 1 keeps field values below e^4, where central differences at
# h = 1e-4 stay inside a 1e-5 absolute error budget
CATALOG_SPECS = ((1.0, 1), (1.0, -1), (-1.0, 1), (-0.5, -1), (0.5, 1))
CATALOG_K = (0.7, -1.2, 0.4, 1.5)


def scalar_catalog() -> Dict[str, ScalarField]:
    out = {
        "const7": ScalarField.constant(7.0),
        "exp(-2x3)": ScalarField(lambda x1, x2, x3: exp(-2.0 * x3)),
        "3x2": ScalarField(lambda x1, x2, x3: 3.0 * x2),
        "x1x2": ScalarField(lambda x1, x2, x3: x1 * x2),
        "x1x2x3": ScalarField(lambda x1, x2, x3: x1 * x2 * x3),
    }
    for mu, eps in CATALOG_SPECS:
        spec = MetricSpec.exceptional(mu, eps)
        tag = f"[mu={mu:g},eps={eps:+d}]"
        for f in metric_field(spec).components:
            out[f"{f.name}{tag}"] = f
        frame = frame_fields(spec)
        for a, u in enumerate(frame.u):
            for i, f in enumerate(u.components):
                out[f"u{a + 1}^{i + 1}{tag}"] = f
        for a, th in enumerate(frame.theta):
            for i, f in enumerate(th.components):
                out[f"theta{a + 1}_{i + 1}{tag}"] = f
        X = soliton_field(SolitonFamily(spec, CATALOG_K))
        for i, f in enumerate(X.components):
            out[f"X^{i + 1}{tag}"] = f
        for a, V in enumerate(killing_basis(spec)):
            for i, f in enumerate(V.components):
                out[f"V{a + 1}^{i + 1}{tag}"] = f
    return out
