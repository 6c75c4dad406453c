"""Timing comparison: compiled kernels vs the pure-numpy fallback.

Runs the dual-loss hot path through both backends and reports wall times.
Usage: python benchmarks/compare_backends.py [--repeat N]
"""
import argparse
import time

import numpy as np

from vacuum_census import _kernels
from vacuum_census.dielectric import LorentzMedium
from vacuum_census.dual_loss import (DualLossProblem, _jpv_python,
                                     _nk_dual_numpy)
from vacuum_census.population import nk_quadrature


def timeit(fn, repeat):
    best = np.inf
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    problem = DualLossProblem(LorentzMedium(1.0, 0.5, 1.0), 0.5, 1.0)
    breaks = np.array([0.8, 1.0, 1.2])

    t0 = time.perf_counter()
    _kernels.nk_dual_point(1.0, 0.5, 1.0, 0.5, 1.0, 1e-4, breaks)
    warmup = time.perf_counter() - t0
    print(f"numba JIT warmup (compile + first call): {warmup:8.2f}  s")
    print()

    rows = []

    t_fast, v_fast = timeit(
        lambda: _kernels.jpv(1.3, 1.0, 0.5, 1e-10), args.repeat * 20)
    t_slow, v_slow = timeit(
        lambda: _jpv_python(1.3, 1.0, 0.5, 1e-10), args.repeat)
    rows.append(("principal-value transform J(1.3)", t_fast, t_slow,
                 abs(v_fast - v_slow)))

    t_fast, v_fast = timeit(
        lambda: _kernels.nk_dual_point(1.0, 0.5, 1.0, 0.5, 1.0, 1e-4,
                                       breaks)[0], args.repeat)
    t_slow, v_slow = timeit(
        lambda: _nk_dual_numpy(problem, 1e-4)[0], 1)
    rows.append(("dual-loss population N_k (tol 1e-4)", t_fast, t_slow,
                 abs(v_fast - v_slow)))

    t_ref, _ = timeit(
        lambda: nk_quadrature(LorentzMedium(1.0, 0.5, 1.0), 1.0,
                              tol=1e-8).n_k, args.repeat)

    print(f"{'computation':40s} {'numba':>10s} {'numpy':>10s} "
          f"{'speedup':>8s} {'|diff|':>9s}")
    for name, fast, slow, diff in rows:
        print(f"{name:40s} {fast * 1e3:8.2f}ms {slow * 1e3:8.2f}ms "
              f"{slow / fast:7.1f}x {diff:9.2e}")
    print(f"{'single-loss N_k quadrature (engine)':40s} "
          f"{'':>10s} {t_ref * 1e3:8.2f}ms")


if __name__ == "__main__":
    main()
