"""Randomized verification suite and its JSON report."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import List, Optional, Tuple

import numpy as np

from . import __version__, kernels, reference
from ._accel import backend_name
from .catalog import scalar_catalog
from .curvature import curvature_at, riemann_symmetry_defect
from .errors import ConfigError
from .jets import fd_jet2
from .lie import lie_bracket
from .metric import Family, MetricSpec, frame_fields
from .soliton import (
    SolitonFamily,
    canonical_lambda,
    einstein_residual,
    gradient_obstruction,
    killing_basis,
    killing_residual,
    soliton_field,
    soliton_residual,
)

# tolerances pinned per check; ``SuiteConfig.tol`` drives the soliton ones
TOL_CONNECTION = 1e-9
TOL_CURVATURE = 1e-9
TOL_SCALAR = 1e-9
TOL_SCALAR_VARIANCE = 1e-16
TOL_DET = 1e-12
TOL_SYMMETRY = 1e-10
TOL_FRAME = 1e-10
TOL_BRACKET = 1e-9
TOL_KILLING = 1e-9
TOL_EINSTEIN = 1e-9
TOL_JETS_FD = 1e-5
FD_STEP = 1e-4
RIGIDITY_DELTA = 1e-3
RIGIDITY_FLOOR = 5e-4
OBSTRUCTION_FLOOR = 1e-3
EINSTEIN_FLOOR = 1e-3
SWEEP_POINT = (0.3, -0.7, 0.5)
SWEEP_DRAWS = 100
K_PER_BATCH = 10


@dataclass
class SuiteConfig:
    family: str = "exceptional"
    mu: float = 1.0
    eps: int = 1
    samples: int = 1000
    seed: int = 42
    tol: float = 1e-8
    box: Tuple[Tuple[float, float], ...] = ((-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0))
    k: Optional[Tuple[float, float, float, float]] = None
    k_bounds: Tuple[float, float] = (-3.0, 3.0)
    out: Optional[str] = None

    def validate(self) -> MetricSpec:
        if self.family not in ("exceptional", "minkowski"):
            raise ConfigError("metric", f"unknown family {self.family!r}")
        if self.family == "exceptional":
            if not isinstance(self.mu, (int, float)) or not math.isfinite(self.mu) or self.mu == 0:
                raise ConfigError("mu", f"must be a finite nonzero real, got {self.mu!r}")
            if self.eps not in (-1, 1):
                raise ConfigError("eps", f"must be -1 or 1, got {self.eps!r}")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples", f"must be an integer >= 1, got {self.samples!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed", f"must be an unsigned integer, got {self.seed!r}")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0 and math.isfinite(self.tol)):
            raise ConfigError("tol", f"must be a positive finite real, got {self.tol!r}")
        if len(self.box) != 3:
            raise ConfigError("box", "needs bounds for three axes")
        for lo, hi in self.box:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ConfigError("box", f"bounds must be finite with min < max, got ({lo}, {hi})")
        lo, hi = self.k_bounds
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ConfigError("k_bounds", f"must be finite with min < max, got ({lo}, {hi})")
        if self.k is not None and (len(self.k) != 4 or not all(math.isfinite(v) for v in self.k)):
            raise ConfigError("k", "must be four finite reals")
        if self.family == "minkowski":
            return MetricSpec.minkowski()
        return MetricSpec.exceptional(self.mu, self.eps)

    def echo(self) -> dict:
        d = asdict(self)
        d["box"] = [list(b) for b in self.box]
        d["k_bounds"] = list(self.k_bounds)
        d["k"] = list(self.k) if self.k is not None else None
        if self.family == "minkowski":
            d.pop("mu")
            d.pop("eps")
        return d


@dataclass
class CheckRecord:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    relation: str = "<="

    @classmethod
    def upper(cls, name, samples, value, tol):
        value = float(value)
        return cls(name, int(samples), value, float(tol), bool(value <= tol))

    @classmethod
    def lower(cls, name, samples, value, floor):
        value = float(value)
        return cls(name, int(samples), value, float(floor), bool(value >= floor), ">=")

    def as_dict(self) -> dict:
        d = asdict(self)
        if not math.isfinite(d["max_residual"]):
            d["max_residual"] = repr(d["max_residual"])
        return d


@dataclass
class VerificationReport:
    config: dict
    checks: List[CheckRecord] = field(default_factory=list)
    engine: dict = field(default_factory=dict)
    timestamp: str = ""

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "engine": self.engine,
            "timestamp": self.timestamp,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"lorentzsoliton {self.engine.get('version', '')} ({self.engine.get('backend', '')})"]
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.name:<28} {c.max_residual:.3e} {c.relation} {c.tolerance:.1e}  (n={c.samples})")
        lines.append("overall: " + ("PASS" if self.overall_pass else "FAIL"))
        return "\n".join(lines)


def _amax(a) -> float:
    return float(np.max(np.abs(a)))


def sample_points(rng: np.random.Generator, box, n: int) -> np.ndarray:
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    return lo + (hi - lo) * rng.random((n, 3))


def _curvature_checks(spec: MetricSpec, pts) -> List[CheckRecord]:
    n = len(pts)
    c = curvature_at(spec, pts)
    if spec.is_exceptional:
        gamma_ref = reference.christoffel(spec, pts)
        riem_ref = reference.riemann(spec, pts)
        ric_ref = reference.ricci(spec, pts)
        tau_ref = reference.scalar_curvature(spec)
    else:
        gamma_ref, riem_ref, ric_ref, tau_ref = 0.0, 0.0, 0.0, 0.0
    return [
        CheckRecord.upper("connection", n, _amax(c.christoffel - gamma_ref), TOL_CONNECTION),
        CheckRecord.upper("riemann", n, _amax(c.riemann - riem_ref), TOL_CURVATURE),
        CheckRecord.upper("ricci", n, _amax(c.ricci - ric_ref), TOL_CURVATURE),
        CheckRecord.upper("riemann-symmetries", n, riemann_symmetry_defect(c.riemann), TOL_SYMMETRY),
        CheckRecord.upper("det-metric", n, _amax(kernels.det3(c.metric) + 1.0), TOL_DET),
        CheckRecord.upper("metric-inverse", n, _amax(c.metric @ c.inverse - np.eye(3)), TOL_DET),
        CheckRecord.upper("scalar-curvature", n, _amax(c.scalar - tau_ref), TOL_SCALAR),
        CheckRecord.upper("scalar-curvature-variance", n, float(np.var(c.scalar)), TOL_SCALAR_VARIANCE),
    ]


def _einstein_checks(spec: MetricSpec, pts) -> List[CheckRecord]:
    n = len(pts)
    E = einstein_residual(spec, pts)
    if not spec.is_exceptional:
        return [CheckRecord.upper("einstein-residual", n, _amax(E), TOL_EINSTEIN)]
    expected = np.zeros_like(E)
    expected[:, 0, 0] = reference.einstein_defect_11(spec, pts)
    return [
        CheckRecord.upper("einstein-residual", n, _amax(E - expected), TOL_EINSTEIN),
        CheckRecord.lower("non-einstein", n, float(np.min(np.abs(E[:, 0, 0]))), EINSTEIN_FLOOR),
    ]


def _frame_checks(spec: MetricSpec, pts) -> List[CheckRecord]:
    n = len(pts)
    frame = frame_fields(spec)
    U = frame.vectors(pts)
    g = curvature_at(spec, pts).metric
    gram = np.einsum("nai,nij,nbj->nab", U, g, U)
    eta = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    duality = np.einsum("nai,nbi->nab", frame.covectors(pts), U) - np.eye(3)
    mu, eps = spec.mu, spec.eps
    u1, u2, u3 = frame.u
    b12 = lie_bracket(u1, u2, pts) - mu * U[:, 2]
    b23 = lie_bracket(u2, u3, pts) - mu * U[:, 1]
    b31 = lie_bracket(u3, u1, pts) - (mu * U[:, 0] + eps * U[:, 1])
    return [
        CheckRecord.upper("frame-products", n, _amax(gram - eta), TOL_FRAME),
        CheckRecord.upper("coframe-duality", n, _amax(duality), TOL_FRAME),
        CheckRecord.upper("frame-brackets", n, max(_amax(b12), _amax(b23), _amax(b31)), TOL_BRACKET),
    ]


def _k_draws(cfg: SuiteConfig, rng: np.random.Generator, n: int) -> np.ndarray:
    if cfg.k is not None:
        return np.tile(np.asarray(cfg.k, dtype=float), (n, 1))
    lo, hi = cfg.k_bounds
    return lo + (hi - lo) * rng.random((n, 4))


def _soliton_checks(cfg: SuiteConfig, spec: MetricSpec, pts, rng) -> List[CheckRecord]:
    n = len(pts)
    lam = canonical_lambda(spec)
    n_k = max(1, math.ceil(n / K_PER_BATCH))
    ks = _k_draws(cfg, rng, n_k)
    res = rigid = diff = 0.0
    rigid_min = math.inf
    base = soliton_field(SolitonFamily(spec))
    for b, k in enumerate(ks):
        chunk = pts[b * K_PER_BATCH : (b + 1) * K_PER_BATCH]
        if len(chunk) == 0:
            break
        X = soliton_field(SolitonFamily(spec, tuple(k)))
        res = max(res, _amax(soliton_residual(spec, X, lam, chunk)))
        r = np.max(np.abs(soliton_residual(spec, X, lam + RIGIDITY_DELTA, chunk)), axis=(-2, -1))
        rigid_min = min(rigid_min, float(np.min(r)))
        diff = max(diff, float(np.max(killing_residual(spec, X - base, chunk))))
    killing = max(float(np.max(killing_residual(spec, V, pts))) for V in killing_basis(spec))

    sweep = _k_draws(cfg, rng, SWEEP_DRAWS)
    point = np.array(SWEEP_POINT)
    obstruction = min(gradient_obstruction(spec, soliton_field(SolitonFamily(spec, tuple(k))), point) for k in sweep)
    baseline = _amax(gradient_obstruction(spec, base, pts) - 0.5 * spec.mu**2)
    return [
        CheckRecord.upper("soliton-residual", n, res, cfg.tol),
        CheckRecord.lower("lambda-rigidity", n, rigid_min, RIGIDITY_FLOOR),
        CheckRecord("expanding", 1, lam, 0.0, bool(lam < 0), "<"),
        CheckRecord.upper("killing-basis", n, killing, TOL_KILLING),
        CheckRecord.upper("killing-difference", n, diff, cfg.tol),
        CheckRecord.lower("gradient-obstruction", SWEEP_DRAWS, obstruction, OBSTRUCTION_FLOOR),
        CheckRecord.upper("gradient-baseline", n, baseline, TOL_EINSTEIN),
    ]


def _jet_checks(pts) -> List[CheckRecord]:
    worst = 0.0
    for f in scalar_catalog().values():
        a, b = f.jet(pts), fd_jet2(f, pts, FD_STEP)
        worst = max(worst, _amax(a.grad - b.grad), _amax(a.hess - b.hess), _amax(a.value - b.value))
    return [CheckRecord.upper("jets-vs-fd", len(pts), worst, TOL_JETS_FD)]


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    """Run every applicable check; deterministic given ``cfg`` (PCG64 seeded by ``cfg.seed``)."""
    spec = cfg.validate()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    pts = sample_points(rng, cfg.box, cfg.samples)
    report = VerificationReport(
        config=cfg.echo(),
        engine={"name": "lorentzsoliton", "version": __version__, "backend": backend_name(), "rng": "PCG64"},
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    report.checks += _curvature_checks(spec, pts)
    report.checks += _einstein_checks(spec, pts)
    if spec.family is Family.EXCEPTIONAL:
        report.checks += _frame_checks(spec, pts)
        report.checks += _soliton_checks(cfg, spec, pts, rng)
    report.checks += _jet_checks(pts)
    return report


def write_report(report: VerificationReport, path: str, fmt: str = "json"):
    text = report.to_json() if fmt == "json" else report.to_text()
    with open(path, "w") as fh:
        fh.write(text + "\n")
