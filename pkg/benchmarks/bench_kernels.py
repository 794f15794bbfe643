#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Both implementations always exist in qgrass._kernels; this script times them
side by side on the workloads that dominate the package: mod-p rank at the
Monte Carlo shape, and the bulk cochain scans behind the exhaustive
expansion searches.

Usage:
    python benchmarks/bench_kernels.py [--reps N] [--chunks N]

Run with QGRASS_NO_NUMBA=1 to confirm the fallback selection path; in that
mode both columns time the same numpy code.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qgrass import _kernels as K
from qgrass.chains import boundary_matrix


def timeit(fn, reps=1):
    fn()  # warm up (JIT compilation, caches)
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def bench_rank(reps: int) -> list[tuple[str, float]]:
    rng = np.random.default_rng(0)
    mats = [rng.integers(0, 3, size=(35, 15)) for _ in range(200)]

    def active():
        for m in mats:
            K.rank_modp(m, 3)

    def fallback():
        for m in mats:
            K._rank_modp_py(np.asarray(m, dtype=np.int64).copy(), 3)

    for m in mats[:20]:
        assert K.rank_modp(m, 3) == K._rank_modp_py(
            np.asarray(m, dtype=np.int64).copy(), 3)
    return [(f"rank_modp ({K.backend_name()}, 200 mats)", timeit(active, reps)),
            ("rank_modp (numpy fallback, 200 mats)", timeit(fallback, reps))]


def bench_scans(chunks: int) -> list[tuple[str, float]]:
    inc = boundary_matrix(4, 2, 2, 3).dense().T.copy()
    dim = inc.shape[1]
    blocks = [K.digit_block(i * 65536, 65536, 3, dim) for i in range(chunks)]
    coset = K.digit_block(0, 3, 3, dim).T.copy()

    def sizes_active():
        for b in blocks:
            K.coboundary_sizes(inc, b, 3)

    def sizes_fallback():
        for b in blocks:
            K._coboundary_sizes_np(inc, b, 3)

    def coset_active():
        for b in blocks:
            K.min_coset_distance(b, coset, 3)

    def coset_fallback():
        for b in blocks:
            K._min_coset_distance_np(b, coset, 3)

    b0 = blocks[0]
    assert (K.coboundary_sizes(inc, b0, 3) == K._coboundary_sizes_np(inc, b0, 3)).all()
    assert (K.min_coset_distance(b0, coset, 3)
            == K._min_coset_distance_np(b0, coset, 3)).all()
    n = chunks * 65536
    return [
        (f"coboundary_sizes ({K.backend_name()}, {n} cochains)", timeit(sizes_active)),
        (f"coboundary_sizes (numpy fallback, {n} cochains)", timeit(sizes_fallback)),
        (f"min_coset_distance ({K.backend_name()}, {n} cochains)", timeit(coset_active)),
        (f"min_coset_distance (numpy fallback, {n} cochains)", timeit(coset_fallback)),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--chunks", type=int, default=8)
    args = parser.parse_args()

    print(f"active backend: {K.backend_name()}")
    rows = bench_rank(args.reps) + bench_scans(args.chunks)
    width = max(len(name) for name, _ in rows)
    for name, seconds in rows:
        print(f"{name:<{width}}  {seconds * 1e3:9.2f} ms")
    pairs = [(rows[i], rows[i + 1]) for i in range(0, len(rows), 2)]
    for (name_a, ta), (name_b, tb) in pairs:
        label = name_a.split(" (")[0]
        print(f"{label}: active is {tb / ta:.1f}x the fallback")


if __name__ == "__main__":
    main()
