"""Benchmark the numba backend against the pure-numpy fallback.

Times the two hot kernels (lattice box scans and sumset expansion) on
representative workloads, checks that both backends return identical
results, and prints a small table.

    python benchmarks/bench_kernels.py [--repeat 5]

Select the backend used by the library itself with SUMSETLAB_KERNEL=numpy.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from sumsetlab import PointConfig, kernels
from sumsetlab.polytope import convex_hull


def _box_workload(name, points, dilate):
    cfg = PointConfig.from_points(points)
    poly = convex_hull(cfg)
    d = cfg.dim
    lo = np.asarray([dilate * min(p[k] for p in cfg.points) for k in range(d)],
                    dtype=np.int64)
    hi = np.asarray([dilate * max(p[k] for p in cfg.points) for k in range(d)],
                    dtype=np.int64)
    lhs = np.asarray([list(f.normal) for f in poly.facets], dtype=np.int64)
    rhs = np.asarray([dilate * f.offset for f in poly.facets], dtype=np.int64)
    return name, (lo, hi, lhs, rhs)


def _sumset_workload(name, points, level):
    cfg = PointConfig.from_points(points)
    gens = kernels.points_to_array(sorted(cfg.points))
    cur = gens.copy()
    for _ in range(level - 1):
        cur = kernels.sumset_step(cur, gens)
    return name, (cur, gens)


def bench(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if "numba" not in kernels.available_backends():
        raise SystemExit("numba is not available; nothing to compare")

    box_cases = [
        _box_workload("box scan 2d triangle, N=600",
                      [(0, 0), (4, 0), (0, 4), (1, 1)], 600),
        _box_workload("box scan 3d simplex,  N=120",
                      [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
                       (1, 1, 1)], 120),
        _box_workload("box scan 1d interval, N=2*10^6",
                      [(0,), (3,), (5,)], 2 * 10 ** 6),
    ]
    sum_cases = [
        _sumset_workload("sumset step 2d square,  |P|~10^5",
                         [(0, 0), (1, 0), (0, 1), (1, 1)], 300),
        _sumset_workload("sumset step 2d hexagon, |P|~10^5",
                         [(0, 0), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2)], 120),
        _sumset_workload("sumset step 3d simplex, |P|~2*10^5",
                         [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 100),
    ]

    print(f"{'workload':38s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, (lo, hi, lhs, rhs) in box_cases:
        dummy = np.empty((0, len(lo)), dtype=np.int64)
        kernels._nb_box_scan(lo, hi, lhs, rhs, dummy, False)  # compile once
        t_nb, n_nb = bench(
            lambda *a: int(kernels._nb_box_scan(*a, dummy, False)),
            (lo, hi, lhs, rhs), args.repeat)
        t_np, n_np = bench(kernels._np_box_count, (lo, hi, lhs, rhs),
                           args.repeat)
        assert n_nb == n_np, (name, n_nb, n_np)
        print(f"{name:38s} {t_nb * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms "
              f"{t_np / t_nb:7.2f}x   ({n_nb} points)")
    for name, (cur, gens) in sum_cases:
        os.environ["SUMSETLAB_KERNEL"] = "numba"
        kernels.sumset_step(cur[:2], gens)  # compile once
        t_nb, r_nb = bench(kernels.sumset_step, (cur, gens), args.repeat)
        os.environ["SUMSETLAB_KERNEL"] = "numpy"
        t_np, r_np = bench(kernels.sumset_step, (cur, gens), args.repeat)
        os.environ.pop("SUMSETLAB_KERNEL")
        assert np.array_equal(r_nb, r_np), name
        print(f"{name:38s} {t_nb * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms "
              f"{t_np / t_nb:7.2f}x   ({len(r_nb)} -> rows)")


if __name__ == "__main__":
    main()
