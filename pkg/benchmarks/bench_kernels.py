#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Coefficients are arbitrary-precision integers either way, so the compiled
kernels only strip interpreter overhead from the index loops; this script
reports what that is actually worth on three workloads:

  * dense integer convolution at q-series sizes (small and large limbs),
  * fraction-free (Bareiss) elimination at relation-system sizes,
  * an end-to-end relation search on a planted instance.

Run from the repository root:  python3 benchmarks/bench_kernels.py
"""

import pathlib
import random
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

from moondec import _kernels
from moondec._kernels import _pykernels

try:
    from moondec._kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeats):
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def bench_backends(label, make_call, repeats=5):
    saved = (_kernels.poly_mul, _kernels.row_echelon)
    rows = {}
    backends = [("python", _pykernels)] + (
        [("cython", _ckernels)] if _ckernels else [])
    for name, impl in backends:
        _kernels.poly_mul = impl.poly_mul
        _kernels.row_echelon = impl.row_echelon
        rows[name] = timeit(make_call, repeats)
    _kernels.poly_mul, _kernels.row_echelon = saved
    py = rows["python"]
    cy = rows.get("cython")
    speedup = f"{py / cy:5.2f}x" if cy else "   --"
    cy_text = f"{cy * 1e3:9.2f}" if cy else "       --"
    print(f"{label:44s} {py * 1e3:9.2f} {cy_text} {speedup}")


def main():
    rng = random.Random(2024)
    print(f"compiled backend available: {_ckernels is not None}")
    print(f"{'workload':44s} {'py (ms)':>9s} {'cy (ms)':>9s} {'speedup':>7s}")

    small = [rng.randint(-9, 9) for _ in range(64)]
    bench_backends("convolution 64x64, 1-digit coefficients",
                   lambda: _kernels.poly_mul(small, small), 20)

    medium = [rng.randint(-10 ** 12, 10 ** 12) for _ in range(256)]
    bench_backends("convolution 256x256, 12-digit coefficients",
                   lambda: _kernels.poly_mul(medium, medium), 5)

    big = [rng.randint(-10 ** 40, 10 ** 40) for _ in range(512)]
    bench_backends("convolution 512x512, 40-digit coefficients",
                   lambda: _kernels.poly_mul(big, big), 3)

    mat_small = [[rng.randint(-99, 99) for _ in range(24)] for _ in range(30)]
    bench_backends("bareiss echelon 30x24, 2-digit entries",
                   lambda: _kernels.row_echelon(mat_small), 10)

    mat_big = [[rng.randint(-10 ** 10, 10 ** 10) for _ in range(40)]
               for _ in range(48)]
    bench_backends("bareiss echelon 48x40, 10-digit entries",
                   lambda: _kernels.row_echelon(mat_big), 3)

    from planting import plant
    from moondec.relations import find_relation
    instance = plant(random.Random(7), 8, 3)

    def search():
        s1, s2, f = instance
        assert find_relation(s1, s2, 8).f == f

    bench_backends("end-to-end relation search (e=8, r=3)", search, 3)


if __name__ == "__main__":
    main()
