"""Benchmark the GF(2) kernels: compiled backend vs pure-numpy fallback.

Runs Gauss-Jordan elimination and packed matrix product over random bit
matrices at a few sizes, then one end-to-end oracle call with whichever
backend is active (set MILNORTC_NO_NUMBA=1 to force the fallback there).

Usage: python benchmarks/bench_gf2.py [--sizes 256,512,1024] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from milnortc import cohomology_of, parse_space
from milnortc import gf2
from milnortc.cuplength import _CUP_CACHE, cup_exact


def _bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _impls():
    out = [("numpy", gf2._eliminate_numpy, gf2._matmul_numpy)]
    if gf2._eliminate_njit is not None:
        out.append(("numba", gf2._eliminate_njit, gf2._matmul_njit))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,512,1024")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(20240816)

    gf2.warmup()  # compile before timing
    print(f"active backend: {gf2.BACKEND}")
    print()
    print("| kernel | size | backend | best (s) |")
    print("|---|---|---|---|")
    for size in sizes:
        dense = rng.integers(0, 2, size=(size, size), dtype=np.uint8)
        packed = gf2.pack_rows(dense)
        for name, eliminate, matmul in _impls():
            if name == "numba":  # warm this exact signature
                work = packed.copy()
                eliminate(work, size, np.full(size, -1, dtype=np.int64))
                matmul(packed, size, packed)

            def run_rref(eliminate=eliminate):
                work = packed.copy()
                eliminate(work, size, np.full(size, -1, dtype=np.int64))

            def run_matmul(matmul=matmul):
                matmul(packed, size, packed)

            print(f"| rref | {size} | {name} | {_bench(run_rref, args.repeat):.4f} |")
            print(
                f"| matmul | {size} | {name} | {_bench(run_matmul, args.repeat):.4f} |"
            )

    P = cohomology_of(parse_space("rh:4,3"))

    def run_cup():
        _CUP_CACHE.clear()
        assert cup_exact(P, 2) == 10

    print()
    print(
        f"cup_exact(rh:4,3, n=2) with {gf2.BACKEND}: "
        f"{_bench(run_cup, args.repeat):.4f} s"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
