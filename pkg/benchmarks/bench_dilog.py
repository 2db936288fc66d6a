#!/usr/bin/env python3
"""Benchmark the dilogarithm kernels: numba backend vs pure-numpy fallback.

Usage:
    python benchmarks/bench_dilog.py [--sizes 1000,10000,100000] [--repeats 5]

The numba timings exclude the one-time JIT compilation (reported
separately). Select the backend used by the package itself with
FLAGVOL_BACKEND=numpy|numba; this script times both regardless.
"""

import argparse
import time

import numpy as np

from flagvol.backend import get_backend


def sample_points(n: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(np.log(0.05), np.log(20.0), n))
    theta = rng.uniform(-np.pi, np.pi, n)
    return r * np.exp(1j * theta)


def best_time(fn, arg, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    numpy_b = get_backend("numpy")
    try:
        t0 = time.perf_counter()
        numba_b = get_backend("numba")
        numba_b.li2_values(sample_points(8))
        numba_b.bloch_wigner_values(sample_points(8))
        jit_seconds = time.perf_counter() - t0
    except ImportError:
        numba_b = None
        jit_seconds = None

    if jit_seconds is not None:
        print(f"numba JIT warm-up: {jit_seconds:.2f} s (one-time, cached)")
    else:
        print("numba not importable; timing the numpy backend only")
    print()
    header = f"{'kernel':<14} {'n':>8} {'numpy':>12}"
    if numba_b:
        header += f" {'numba':>12} {'speedup':>9}"
    print(header)

    for n in sizes:
        pts = sample_points(n)
        for label, attr in (("li2", "li2_values"),
                            ("bloch_wigner", "bloch_wigner_values")):
            t_np = best_time(getattr(numpy_b, attr), pts, args.repeats)
            row = f"{label:<14} {n:>8} {t_np * 1e3:>10.2f}ms"
            if numba_b:
                t_nb = best_time(getattr(numba_b, attr), pts, args.repeats)
                row += f" {t_nb * 1e3:>10.2f}ms {t_np / t_nb:>8.1f}x"
            print(row)

    if numba_b:
        pts = sample_points(20000)
        d = np.max(np.abs(numba_b.bloch_wigner_values(pts)
                          - numpy_b.bloch_wigner_values(pts)))
        print(f"\nmax |numba - numpy| over 20000 Bloch-Wigner values: {d:.3e}")


if __name__ == "__main__":
    main()
