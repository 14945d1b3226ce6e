"""Benchmark the compiled eigenvalue kernel against the NumPy fallback.

Times ``eigvals_batch`` on random ensemble matrices over a grid of
(matrix size, batch size) and prints one table row per cell with the
speedup of the compiled QL sweep over the chunked dense fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeats 5] [--k 100]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from betafreeze import BACKEND, master_stream, sample_chi
from betafreeze._core import eigvals_batch

GRID = [
    (2, 100_000),
    (3, 100_000),
    (5, 50_000),
    (10, 20_000),
    (20, 10_000),
    (50, 2_000),
    (100, 500),
]


def bench_one(d: np.ndarray, e: np.ndarray, backend: str, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        eigvals_batch(d, e, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per cell; the minimum is kept")
    parser.add_argument("--k", type=float, default=100.0,
                        help="ensemble parameter used to generate the inputs")
    args = parser.parse_args()

    if BACKEND != "compiled":
        print("compiled kernel unavailable; nothing to compare")
        return 1

    rng = master_stream(0)
    print(f"{'n':>5} {'batch':>8} {'compiled':>12} {'fallback':>12} "
          f"{'speedup':>8} {'max|diff|':>10}")
    for n, batch in GRID:
        d = rng.standard_normal((batch, n))
        dof = 2.0 * args.k * np.arange(n - 1, 0, -1, dtype=float)
        e = sample_chi(rng, dof, size=(batch, n - 1)) / np.sqrt(2.0)
        t_c = bench_one(d, e, "compiled", args.repeats)
        t_f = bench_one(d, e, "fallback", args.repeats)
        diff = float(np.max(np.abs(
            eigvals_batch(d, e, backend="compiled")
            - eigvals_batch(d, e, backend="fallback")
        )))
        print(f"{n:>5} {batch:>8} {t_c:>11.4f}s {t_f:>11.4f}s "
              f"{t_f / t_c:>7.1f}x {diff:>10.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
