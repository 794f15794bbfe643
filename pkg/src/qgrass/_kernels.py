"""Hot numeric kernels: mod-p elimination and bulk cochain scans.

Every kernel has two implementations with identical integer semantics: a
numba-jitted one and a pure-numpy one.  Selection happens at import time:
numba is used when it is importable and QGRASS_NO_NUMBA is unset.  The
benchmark script under benchmarks/ compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_NUMBA = os.environ.get("QGRASS_NO_NUMBA", "") == ""

if _WANT_NUMBA:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# rank over F_p


def _rank_modp_py(a: np.ndarray, p: int) -> int:
    """Gaussian elimination rank of an int64 matrix over F_p."""
    a = np.mod(a, p)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            tmp = a[r].copy()
            a[r] = a[piv]
            a[piv] = tmp
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1:, c].copy()
        nz = np.nonzero(col)[0]
        if nz.size:
            a[r + 1 + nz] = (a[r + 1 + nz] - np.outer(col[nz], a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def _make_rank_modp_numba():
    @njit(cache=True)
    def _rank(a, p):  # pragma: no cover - compiled
        rows, cols = a.shape
        a = a % p
        r = 0
        for c in range(cols):
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            # inverse by Fermat
            inv = 1
            base = a[r, c] % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
            if r == rows:
                break
        return r

    return _rank


if HAVE_NUMBA:
    _rank_modp_impl = _make_rank_modp_numba()

    def rank_modp(a: np.ndarray, p: int) -> int:
        a = np.ascontiguousarray(np.asarray(a, dtype=np.int64))
        if a.size == 0:
            return 0
        return int(_rank_modp_impl(a.copy(), p))

else:

    def rank_modp(a: np.ndarray, p: int) -> int:
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return 0
        return _rank_modp_py(a.copy(), p)


# ---------------------------------------------------------------------------
# bulk cochain scans
#
# Cochains at a fixed level are encoded as base-m digit columns over the
# canonical subspace order.  `digit_block` materializes indices
# [start, start+count) as a (dim, count) uint8 matrix; the scan kernels take
# such a block plus the 0/1 up-incidence and produce per-cochain statistics.


def digit_block(start: int, count: int, m: int, dim: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.int64)
    out = np.empty((dim, count), dtype=np.uint8)
    for j in range(dim):
        out[j] = (idx % m).astype(np.uint8)
        idx //= m
    return out


def _coboundary_sizes_np(inc: np.ndarray, block: np.ndarray, m: int) -> np.ndarray:
    # float64 matmul is exact here (row sums stay far below 2^53) and much
    # faster than integer matmul, which numpy cannot hand to BLAS
    prod = np.rint(inc.astype(np.float64) @ block.astype(np.float64)).astype(np.int64) % m
    return np.count_nonzero(prod, axis=0).astype(np.int64)


def _make_coboundary_sizes_numba():
    @njit(cache=True)
    def _sizes(inc, block, m):  # pragma: no cover - compiled
        n_up, n_low = inc.shape
        count = block.shape[1]
        out = np.zeros(count, dtype=np.int64)
        for t in range(count):
            nz = 0
            for i in range(n_up):
                s = 0
                for j in range(n_low):
                    if inc[i, j]:
                        s += block[j, t]
                if s % m != 0:
                    nz += 1
            out[t] = nz
        return out

    return _sizes


if HAVE_NUMBA:
    _coboundary_sizes_impl = _make_coboundary_sizes_numba()

    def coboundary_sizes(inc: np.ndarray, block: np.ndarray, m: int) -> np.ndarray:
        return _coboundary_sizes_impl(
            np.ascontiguousarray(inc, dtype=np.uint8),
            np.ascontiguousarray(block, dtype=np.uint8), m)

else:
    coboundary_sizes = _coboundary_sizes_np


def _min_coset_distance_np(block: np.ndarray, coset: np.ndarray, m: int) -> np.ndarray:
    count = block.shape[1]
    best = np.full(count, block.shape[0], dtype=np.int64)
    for v in coset:
        dist = np.count_nonzero((block.astype(np.int64) - v[:, None]) % m, axis=0)
        np.minimum(best, dist, out=best)
    return best


def _make_min_coset_distance_numba():
    @njit(cache=True)
    def _mindist(block, coset, m):  # pragma: no cover - compiled
        dim, count = block.shape
        n_coset = coset.shape[0]
        out = np.empty(count, dtype=np.int64)
        for t in range(count):
            best = dim + 1
            for s in range(n_coset):
                d = 0
                for j in range(dim):
                    if (block[j, t] + m - coset[s, j]) % m != 0:
                        d += 1
                if d < best:
                    best = d
            out[t] = best
        return out

    return _mindist


if HAVE_NUMBA:
    _min_coset_distance_impl = _make_min_coset_distance_numba()

    def min_coset_distance(block: np.ndarray, coset: np.ndarray, m: int) -> np.ndarray:
        return _min_coset_distance_impl(
            np.ascontiguousarray(block, dtype=np.uint8),
            np.ascontiguousarray(coset, dtype=np.uint8), m)

else:
    min_coset_distance = _min_coset_distance_np


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
