"""Command-line entry point: ``lorentzsoliton {verify,query,geodesic,soliton}``.

Exit codes: 0 pass, 1 check failure, 2 configuration/usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .curvature import curvature_at
from .errors import BlowUpError, ConfigError, GeometryError, ParameterError, SpecError
from .geodesic import GeodesicState, integrate_geodesic
from .metric import MetricSpec
from .soliton import SolitonFamily, canonical_lambda, soliton_field, soliton_residual
from .suite import SuiteConfig, run_suite, sample_points, write_report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3

QUANTITIES = ("metric", "inverse", "christoffel", "riemann", "ricci", "scalar")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _floats(n):
    def parse(text):
        try:
            vals = [float(v) for v in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated reals, got {text!r}")
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated reals, got {text!r}")
        return vals

    return parse


def _add_metric_args(p):
    p.add_argument("--metric", choices=("exceptional", "minkowski"), default="exceptional")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lorentzsoliton", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the randomized verification suite")
    _add_metric_args(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--k", type=_floats(4), default=None, help="fixed soliton constants k1,k2,k3,k4")
    p.add_argument("--out", default=None)

    p = sub.add_parser("query", help="print a tensor at a point")
    _add_metric_args(p)
    p.add_argument("quantity", choices=QUANTITIES)
    p.add_argument("--point", type=_floats(3), default=[0.0, 0.0, 0.0])

    p = sub.add_parser("geodesic", help="integrate a geodesic and write a CSV trace")
    _add_metric_args(p)
    p.add_argument("--point", type=_floats(3), default=[0.0, 0.0, 0.0])
    p.add_argument("--velocity", type=_floats(3), default=[0.0, 0.0, 1.0])
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", default=None)

    p = sub.add_parser("soliton", help="soliton residual sweep over k")
    _add_metric_args(p)
    p.add_argument("--k", type=_floats(4), default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    return parser


def _spec(args) -> MetricSpec:
    if args.metric == "minkowski":
        return MetricSpec.minkowski()
    try:
        return MetricSpec.exceptional(args.mu, args.eps)
    except SpecError as exc:
        field = "mu" if "mu" in str(exc) else "eps"
        raise ConfigError(field, str(exc)) from exc


def _emit(text: str, out):
    if out is None:
        print(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc}") from exc


def _matrix_text(a) -> str:
    return np.array2string(np.asarray(a), precision=17, max_line_width=200)


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        family=args.metric,
        mu=args.mu,
        eps=args.eps,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        k=tuple(args.k) if args.k else None,
        out=args.out,
    )
    report = run_suite(cfg)
    if args.out:
        write_report(report, args.out, args.format)
    else:
        print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_PASS if report.overall_pass else EXIT_FAIL


def cmd_query(args) -> int:
    spec = _spec(args)
    c = curvature_at(spec, np.array(args.point))
    value = {
        "metric": c.metric,
        "inverse": c.inverse,
        "christoffel": c.christoffel,
        "riemann": c.riemann,
        "ricci": c.ricci,
        "scalar": c.scalar,
    }[args.quantity]
    if args.format == "json":
        record = {"quantity": args.quantity, "metric": spec.as_dict(), "point": args.point, "value": np.asarray(value).tolist()}
        print(json.dumps(record))
    else:
        print(f"{args.quantity} at {tuple(args.point)}:")
        print(_matrix_text(value))
    return EXIT_PASS


def cmd_geodesic(args) -> int:
    spec = _spec(args)
    if not (args.h > 0):
        raise ConfigError("h", f"must be positive, got {args.h}")
    if not (args.T > 0):
        raise ConfigError("T", f"must be positive, got {args.T}")
    try:
        trace = integrate_geodesic(spec, GeodesicState.make(args.point, args.velocity), args.T, args.h)
    except ParameterError as exc:
        raise ConfigError("h", str(exc)) from exc
    except BlowUpError as exc:
        print(f"geodesic left every bounded region: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        try:
            trace.to_csv(args.out)
        except OSError as exc:
            raise OSError(f"cannot write {args.out}: {exc}") from exc
    e_drift, p_drift = trace.energy_drift(), trace.momentum_drift()
    ok = e_drift <= args.tol and p_drift <= args.tol
    summary = {
        "metric": spec.as_dict(),
        "steps": len(trace.t) - 1,
        "energy": float(trace.energy[0]),
        "max_energy_drift": e_drift,
        "max_momentum_drift": p_drift,
        "tolerance": args.tol,
        "pass": ok,
    }
    if args.format == "json":
        print(json.dumps(summary))
    else:
        for k, v in summary.items():
            print(f"{k}: {v}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_soliton(args) -> int:
    spec = _spec(args)
    spec.require_exceptional("soliton")
    if args.samples < 1:
        raise ConfigError("samples", "must be >= 1")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    ks = [tuple(args.k)] if args.k else [tuple(k) for k in -3.0 + 6.0 * rng.random((args.samples, 4))]
    pts = sample_points(rng, ((-2.0, 2.0),) * 3, 10)
    lam = canonical_lambda(spec)
    worst = max(
        float(np.max(np.abs(soliton_residual(spec, soliton_field(SolitonFamily(spec, k)), lam, pts))))
        for k in ks
    )
    ok = worst <= args.tol
    record = {
        "metric": spec.as_dict(),
        "lambda": lam,
        "k_draws": len(ks),
        "points_per_draw": len(pts),
        "seed": args.seed,
        "max_residual": worst,
        "tolerance": args.tol,
        "pass": ok,
    }
    _emit(json.dumps(record, indent=2) if args.format == "json" else "\n".join(f"{k}: {v}" for k, v in record.items()), args.out)
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "query": cmd_query, "geodesic": cmd_geodesic, "soliton": cmd_soliton}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
