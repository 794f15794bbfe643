"""The random q-complex model: full k-skeleton plus Bernoulli (k+1)-faces.

Each (k+1)-space flips its own coin, derived by hashing (seed, canonical
face index) through a splitmix64 round.  That makes samples reproducible
bit-for-bit regardless of iteration order or thread count, and couples
samples across p: raising p only adds faces, never removes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import rank_modp
from .chains import boundary_matrix
from .errors import PreconditionError
from .qarith import gaussian_binomial, q_int
from .subspace import Subspace, enumerate_grassmannian

_MASK = (1 << 64) - 1


def splitmix64(x: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer on uint64 counters."""
    z = (x + np.uint64(0x9E3779B97F4A7C15)) & np.uint64(_MASK)
    z = ((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)) & np.uint64(_MASK)
    z = ((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)) & np.uint64(_MASK)
    return z ^ (z >> np.uint64(31))


def face_uniforms(seed: int, count: int) -> np.ndarray:
    """One uniform in [0,1) per canonical face index, keyed by (seed, index)."""
    idx = np.arange(count, dtype=np.uint64)
    key = splitmix64(np.full(count, seed & _MASK, dtype=np.uint64))
    bits = splitmix64(key ^ splitmix64(idx + np.uint64(0xA5A5A5A5A5A5A5A5)))
    return (bits >> np.uint64(11)).astype(np.float64) / float(1 << 53)


def derive_seed(master: int, *parts: int) -> int:
    acc = np.uint64(master & _MASK)
    for p in parts:
        acc = splitmix64(np.array([acc ^ np.uint64(p & _MASK)], dtype=np.uint64))[0]
    return int(acc)


@dataclass(frozen=True)
class RandomQComplex:
    n: int
    k: int
    q: int
    p: float
    seed: int
    included: tuple[int, ...]  # canonical indices into Gr_{k+1}(n)

    def included_faces(self) -> tuple[Subspace, ...]:
        faces = enumerate_grassmannian(self.n, self.k + 1, self.q)
        return tuple(faces[i] for i in self.included)


def sample(n: int, k: int, q: int, p: float, seed: int) -> RandomQComplex:
    """Draw a complex: every (k+1)-space enters independently with
    probability p, coupled across p through shared per-face uniforms."""
    if not 0 <= p <= 1:
        raise PreconditionError("p must lie in [0,1]")
    if k + 1 > n:
        raise PreconditionError("k+1 exceeds the ambient dimension")
    total = gaussian_binomial(n, k + 1, q)
    u = face_uniforms(seed, total)
    included = tuple(int(i) for i in np.nonzero(u < p)[0])
    return RandomQComplex(n=n, k=k, q=q, p=p, seed=seed, included=included)


class ConnectivityTester:
    """Rank-based H^k(X) = 0 test over a prime field p_coef | q+1.

    The full-skeleton coboundary rank below level k is computed once and
    shared across samples; only the included-rows rank varies.
    """

    def __init__(self, n: int, k: int, q: int, p_coef: int):
        if any(p_coef % d == 0 for d in range(2, p_coef)) or p_coef < 2:
            raise PreconditionError(f"{p_coef} is not prime")
        if (q + 1) % p_coef != 0:
            raise PreconditionError(
                f"coefficient prime must divide q+1; got q={q}, p={p_coef}")
        self.n, self.k, self.q, self.p = n, k, q, p_coef
        self.inc = boundary_matrix(n, k + 1, q, p_coef).dense().T.copy()
        self.dim_ck = gaussian_binomial(n, k, q)
        if k == 0:
            self.rank_below = 0
        else:
            below = boundary_matrix(n, k, q, p_coef).dense().T
            self.rank_below = rank_modp(below, p_coef)

    def is_connected(self, x: RandomQComplex) -> bool:
        rows = self.inc[list(x.included)] if x.included else self.inc[:0]
        return rank_modp(rows, self.p) == self.dim_ck - self.rank_below

    def uncovered(self, x: RandomQComplex) -> list[int]:
        if x.included:
            covered = self.inc[list(x.included)].any(axis=0)
        else:
            covered = np.zeros(self.dim_ck, dtype=bool)
        return [int(i) for i in np.nonzero(~covered)[0]]


def is_k_connected(x: RandomQComplex, p_coef: int) -> bool:
    return ConnectivityTester(x.n, x.k, x.q, p_coef).is_connected(x)


def uncovered_faces(x: RandomQComplex) -> list[Subspace]:
    """k-spaces contained in no included (k+1)-space."""
    tester = ConnectivityTester(x.n, x.k, x.q, _smallest_prime_factor(x.q + 1))
    faces = enumerate_grassmannian(x.n, x.k, x.q)
    return [faces[i] for i in tester.uncovered(x)]


def _smallest_prime_factor(x: int) -> int:
    d = 2
    while d * d <= x:
        if x % d == 0:
            return d
        d += 1
    return x


def threshold_estimate(n: int, k: int, q: int) -> float:
    """The predicted transition point ln((n choose k)_q) / [n-k]_q."""
    return math.log(gaussian_binomial(n, k, q)) / q_int(n - k, q)


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class SweepRow:
    p: float
    trials: int
    connected: int
    seconds: float = 0.0

    @property
    def phat(self) -> float:
        return self.connected / self.trials if self.trials else 0.0

    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.connected, self.trials)


@dataclass
class SweepResult:
    n: int
    k: int
    q: int
    p_coef: int
    seed: int
    pstar: float
    rows: list[SweepRow]

    def to_csv(self) -> str:
        lines = [f"# pstar={self.pstar!r}", "p,trials,connected,phat,ci_lo,ci_hi"]
        for r in self.rows:
            lo, hi = r.ci()
            lines.append(
                f"{r.p:.6g},{r.trials},{r.connected},{r.phat:.8g},{lo:.8g},{hi:.8g}")
        return "\n".join(lines) + "\n"


def threshold_sweep(n: int, k: int, q: int, p_grid: list[float], trials: int,
                    seed: int, p_coef: int) -> SweepResult:
    """Empirical connectivity probability over a p grid; per-trial coins are
    shared across the grid, so each trial's samples are nested in p."""
    import time

    tester = ConnectivityTester(n, k, q, p_coef)
    rows = [SweepRow(p=p, trials=trials, connected=0) for p in sorted(p_grid)]
    for t in range(trials):
        s = derive_seed(seed, t)
        for row in rows:
            t0 = time.perf_counter()
            x = sample(n, k, q, row.p, s)
            if tester.is_connected(x):
                row.connected += 1
            row.seconds += time.perf_counter() - t0
    return SweepResult(n=n, k=k, q=q, p_coef=p_coef, seed=seed,
                       pstar=threshold_estimate(n, k, q), rows=rows)
