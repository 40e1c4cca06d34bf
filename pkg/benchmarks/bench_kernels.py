"""Compare the numba and pure-numpy kernel paths.

    python benchmarks/bench_kernels.py [--points 20000] [--steps 10000]
"""

import argparse
import time

import numpy as np

from lorentzsoliton import kernels
from lorentzsoliton.metric import MetricSpec, metric_field


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--steps", type=int, default=10000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    spec = MetricSpec.exceptional(1.0, 1)
    pts = np.random.default_rng(0).uniform(-2, 2, (args.points, 3))
    g, dg, ddg = metric_field(spec).jets(pts)
    y0 = np.array([0.0, 0.0, 0.0, 0.3, 0.5, 1.0])

    # compile outside the timed region
    kernels.curvature(g[:2], dg[:2], ddg[:2], backend="numba")
    kernels.rk4_geodesic(1, 1.0, 1, y0, 1e-3, 2, backend="numba")

    print(f"{'kernel':<34}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}  max|diff|")
    t_np, c_np = best_of(lambda: kernels.curvature(g, dg, ddg, backend="numpy"), args.repeat)
    t_nb, c_nb = best_of(lambda: kernels.curvature(g, dg, ddg, backend="numba"), args.repeat)
    diff = max(float(np.max(np.abs(a - b))) for a, b in zip(c_np, c_nb))
    print(f"{f'curvature ({args.points} points)':<34}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  {diff:.1e}")

    t_np, (s_np, _) = best_of(lambda: kernels.rk4_geodesic(1, 1.0, 1, y0, 1e-3, args.steps, backend="numpy"), args.repeat)
    t_nb, (s_nb, _) = best_of(lambda: kernels.rk4_geodesic(1, 1.0, 1, y0, 1e-3, args.steps, backend="numba"), args.repeat)
    diff = float(np.max(np.abs(s_np - s_nb)))
    print(f"{f'rk4 geodesic ({args.steps} steps)':<34}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  {diff:.1e}")


if __name__ == "__main__":
    main()
