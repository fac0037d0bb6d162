#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the hot routines of both backends on identical workloads and prints
a table of per-call times and speedups.  Usage:

    python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import time

from paulitherm import _kernels_py

try:
    from paulitherm import _kernels_c
except ImportError:
    _kernels_c = None


def bench(fn, repeat: int) -> float:
    """Best-of-5 mean time per call, in seconds."""
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def workloads(mod):
    lam_grid = [0.01 + 0.98 * i / 499 for i in range(500)]
    osc = lambda t: 0.23 - math.exp(-0.38 * t) * (1.0 - math.exp(-0.38 * t))

    def scalar_batch():
        for lam in lam_grid:
            mod.f_lambda(lam)
            mod.mean_rate_prefactor(lam)
            mod.second_moment_factor(lam)

    def moments_batch():
        for lam in lam_grid:
            mod.mean_var(1.0, lam)

    def quad_smooth():
        mod.adaptive_simpson(osc, 0.0, 8.0, 1e-10, 40)

    def root():
        mod.bisect(lambda x: x * (math.log1p(x) - math.log1p(-x)) - 2.0,
                   0.5, 0.99, 1e-12)

    return [("scalar kernels x500", scalar_batch, 200),
            ("mean_var x500", moments_batch, 100),
            ("adaptive_simpson", quad_smooth, 500),
            ("bisect x_star", root, 2000)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=None,
                        help="override the per-workload repeat counts")
    args = parser.parse_args()

    print(f"{'workload':<22} {'python':>12} {'cython':>12} {'speedup':>9}")
    print("-" * 58)
    for (name, fn_py, repeat), spec_c in zip(
            workloads(_kernels_py),
            workloads(_kernels_c) if _kernels_c else workloads(_kernels_py)):
        n = args.repeat or repeat
        t_py = bench(fn_py, n)
        if _kernels_c is None:
            print(f"{name:<22} {t_py * 1e6:>10.1f}us {'n/a':>12} {'n/a':>9}")
            continue
        t_c = bench(spec_c[1], n)
        print(f"{name:<22} {t_py * 1e6:>10.1f}us {t_c * 1e6:>10.1f}us "
              f"{t_py / t_c:>8.1f}x")
    if _kernels_c is None:
        print("\ncompiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
