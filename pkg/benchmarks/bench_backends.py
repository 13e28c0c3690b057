#!/usr/bin/env python3
"""Benchmark the quadrature kernels: numba njit vs pure numpy.

Times the three hot kernels on realistic node counts and one end-to-end
degree computation per backend, and checks that the backends agree.

    python3 benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import os
import time

import numpy as np

from charlocus import _quad_numba, _quad_numpy
from charlocus import backend, mapping_degree
from charlocus.maps import builtin_map

BACKENDS = {"numpy": _quad_numpy, "numba": _quad_numba}


def time_call(fn, *args, repeats=200):
    fn(*args)  # warmup (includes jit compilation for numba)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats):
    rng = np.random.default_rng(7)
    n = 1 << 18
    values = rng.standard_normal(n)
    angles = rng.uniform(-np.pi, np.pi, size=n)
    f = rng.standard_normal((n, 3)) + 2.0
    ft = rng.standard_normal((n, 3))
    fp = rng.standard_normal((n, 3))
    w = rng.uniform(0.5, 1.0, size=n)

    cases = [
        ("pairwise_sum", (values,)),
        ("winding_sum", (angles,)),
        ("sphere_kronecker_sum", (f, ft, fp, w)),
    ]
    print(f"kernel timings ({n} nodes, best of {repeats}):")
    print(f"{'kernel':>22} {'numpy':>12} {'numba':>12} {'speedup':>9}  agreement")
    for name, args in cases:
        t_np = time_call(getattr(_quad_numpy, name), *args, repeats=repeats)
        t_nb = time_call(getattr(_quad_numba, name), *args, repeats=repeats)
        v_np = getattr(_quad_numpy, name)(*args)
        v_nb = getattr(_quad_numba, name)(*args)
        diff = abs(v_np - v_nb) / max(1.0, abs(v_np))
        print(f"{name:>22} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms "
              f"{t_np / t_nb:>8.2f}x  rel diff {diff:.2e}")


def bench_end_to_end():
    print("\nend-to-end mapping degree of z^3 on S^1 (resolution 65536):")
    f = builtin_map("power:3", 1)
    for name in ("numpy", "numba"):
        os.environ[backend.ENV_VAR] = name
        mapping_degree(f, resolution=65536)  # warmup
        t0 = time.perf_counter()
        est = mapping_degree(f, resolution=65536)
        dt = time.perf_counter() - t0
        print(f"  {name:>6}: {dt * 1e3:8.2f}ms  raw={est.raw:.12f}")
    os.environ.pop(backend.ENV_VAR, None)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=200)
    args = ap.parse_args()
    bench_kernels(args.repeats)
    bench_end_to_end()


if __name__ == "__main__":
    main()
