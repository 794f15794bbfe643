"""Coboundary expansion by brute force, with the cone-derived lower bounds.

The exhaustive scans stream the cochain space in base-m digit blocks through
the kernels in `_kernels`; everything reported is exact (Fractions for
ratios, ints for counts).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import _kernels as kernels
from .chains import Chain, Cochain, ModRing, boundary_matrix, coboundary
from .cones import OrderedBasis, cone_size_bound, contraction
from .errors import BudgetError
from .qarith import q_int, theta_threshold
from .subspace import (
    Subspace,
    enumerate_grassmannian,
    grassmannian_index,
    intersect,
)

_CHUNK = 1 << 16


def budget_mb() -> int:
    return int(os.environ.get("QGRASS_BUDGET_MB", "512"))


def _scan_cap() -> int:
    # one byte per digit per cochain in flight; cap total work as well
    return budget_mb() * (1 << 20)


def up_incidence(n: int, k: int, q: int) -> np.ndarray:
    """0/1 matrix with rows the (k+1)-faces and columns the k-faces."""
    return boundary_matrix(n, k + 1, q, 2).dense().T.copy()


_IMG_CACHE: dict[tuple[int, int, int, int], np.ndarray] = {}


def coboundary_image_vectors(n: int, k: int, q: int, m: int) -> np.ndarray:
    """Every vector of im(d_{k-1}) inside C^k, one per row.

    Prime m enumerates coordinates over a column basis; composite m closes
    the generated subgroup by BFS.  Rejected when the subgroup would not fit
    the byte budget.
    """
    cached = _IMG_CACHE.get((n, k, q, m))
    if cached is not None:
        return cached
    dim = len(enumerate_grassmannian(n, k, q))
    if k == 0:
        out = np.zeros((1, dim), dtype=np.uint8)
        _IMG_CACHE[(n, k, q, m)] = out
        return out
    dmat = boundary_matrix(n, k, q, m).dense().T.astype(np.int64)  # dim x C^{k-1}
    cols = [tuple(int(x) for x in dmat[:, j] % m) for j in range(dmat.shape[1])]

    def check_budget(count: int) -> None:
        if count * dim > _scan_cap():
            raise BudgetError(
                f"coboundary coset has {count} elements of length {dim}; "
                f"raise QGRASS_BUDGET_MB to allow it")

    def _is_prime(x: int) -> bool:
        return x >= 2 and all(x % d for d in range(2, int(x**0.5) + 1))

    if _is_prime(m):
        mat = dmat.T % m  # rows are generators
        r = kernels.rank_modp(mat.copy(), m)
        check_budget(m**r)
        # extract r independent columns of d by greedy rank growth
        acc: list[np.ndarray] = []
        for j in range(dmat.shape[1]):
            cand = acc + [dmat[:, j] % m]
            if kernels.rank_modp(np.array(cand), m) == len(cand):
                acc = cand
                if len(acc) == r:
                    break
        coeffs = kernels.digit_block(0, m**r, m, r).astype(np.int64)
        img = np.zeros((m**r, dim), dtype=np.int64)
        for i, vec in enumerate(acc):
            img = (img + np.outer(coeffs[i], vec)) % m
        out = img.astype(np.uint8)
        _IMG_CACHE[(n, k, q, m)] = out
        return out

    seen = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        nxt = []
        for v in frontier:
            for g in cols:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    check_budget(len(seen))
                    nxt.append(w)
        frontier = nxt
    out = np.array(sorted(seen), dtype=np.uint8)
    _IMG_CACHE[(n, k, q, m)] = out
    return out


def class_norm(a: Cochain) -> int:
    """Least support size over the coboundary coset of a."""
    n, k, q, m = a.n, a.k, a.q, a.m
    img = coboundary_image_vectors(n, k, q, m)
    idx = grassmannian_index(n, k, q)
    vec = np.zeros((len(idx), 1), dtype=np.uint8)
    for u, c in a.coeffs.items():
        vec[idx[u], 0] = c
    return int(kernels.min_coset_distance(vec, img, m)[0])


def cochain_from_index(index: int, n: int, k: int, q: int, m: int) -> Cochain:
    faces = enumerate_grassmannian(n, k, q)
    terms = []
    for u in faces:
        index, digit = divmod(index, m)
        if digit:
            terms.append((u, digit))
    return Chain.build(n, k, m, q, terms)


@dataclass
class ExpansionReport:
    n: int
    k: int
    q: int
    m: int
    h_coboundary: Fraction          # min over alpha outside B^k
    h_cosystolic: Fraction          # min over alpha outside Z^k
    witness_index: int
    witness: Cochain
    lower_bound: Fraction | None
    domains_agree: bool
    scanned: int

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "q": self.q, "mod": self.m,
            "h_coboundary": str(self.h_coboundary),
            "h_cosystolic": str(self.h_cosystolic),
            "witness": self.witness.to_json(),
            "lower_bound": str(self.lower_bound) if self.lower_bound is not None else None,
            "domains_agree": self.domains_agree,
            "scanned": self.scanned,
            "verdict": "PASS" if (self.lower_bound is None
                                   or self.h_coboundary >= self.lower_bound) else "FAIL",
        }


def expansion_lower_bound(n: int, k: int, q: int) -> Fraction | None:
    """Cone-derived bound: [n-k]_q / [k+1]_q / f(k) below the middle, 1/f(n-k)
    above it, nothing at the middle."""
    if 2 * k < n:
        return Fraction(q_int(n - k, q), q_int(k + 1, q) * cone_size_bound(k, q))
    if 2 * k > n:
        return Fraction(1, cone_size_bound(n - k, q))
    return None


def expansion_constant(n: int, k: int, q: int, m: int) -> ExpansionReport:
    """Exact expansion constants at level k by full enumeration of C^k."""
    if (q + 1) % m != 0:
        from .errors import PreconditionError

        raise PreconditionError(
            f"expansion needs m | q+1 so coboundaries are cocycles; "
            f"got q={q}, m={m}")
    faces = enumerate_grassmannian(n, k, q)
    dim = len(faces)
    total = m**dim
    if total > _scan_cap():
        raise BudgetError(
            f"would scan {total} cochains; raise QGRASS_BUDGET_MB")
    inc = up_incidence(n, k, q)
    img = coboundary_image_vectors(n, k, q, m)

    best_cb: tuple[int, int, int] | None = None   # (|da|, norm, index)
    best_cs: tuple[int, int, int] | None = None
    for start in range(0, total, _CHUNK):
        count = min(_CHUNK, total - start)
        block = kernels.digit_block(start, count, m, dim)
        sizes = kernels.coboundary_sizes(inc, block, m)
        norms = kernels.min_coset_distance(block, img, m)
        for flavor, mask in (("cb", norms > 0), ("cs", sizes > 0)):
            if not mask.any():
                continue
            idxs = np.nonzero(mask)[0]
            num = sizes[idxs]
            den = norms[idxs]
            best = best_cb if flavor == "cb" else best_cs
            if best is None:
                j = idxs[0]
                best = (int(sizes[j]), int(norms[j]), start + int(j))
            bn, bd, bi = best
            better = num * bd < bn * den  # num/den < bn/bd exactly
            for j in np.nonzero(better)[0]:
                cand = (int(num[j]), int(den[j]), start + int(idxs[j]))
                if cand[0] * bd < bn * cand[1]:
                    bn, bd, bi = cand
            best = (bn, bd, bi)
            if flavor == "cb":
                best_cb = best
            else:
                best_cs = best
    assert best_cb is not None and best_cs is not None
    h_cb = Fraction(best_cb[0], best_cb[1])
    h_cs = Fraction(best_cs[0], best_cs[1])
    witness = cochain_from_index(best_cb[2], n, k, q, m)
    return ExpansionReport(
        n=n, k=k, q=q, m=m, h_coboundary=h_cb, h_cosystolic=h_cs,
        witness_index=best_cb[2], witness=witness,
        lower_bound=expansion_lower_bound(n, k, q),
        domains_agree=(h_cb == h_cs), scanned=total)


# ---------------------------------------------------------------------------
# Sampled checks


@dataclass
class SmallSetVerdict:
    trials: int
    violations: int
    tightest_slack: int            # min of |da| - bound over non-vacuous trials
    vacuous: int                   # trials where the bound was <= 0

    @property
    def ok(self) -> bool:
        return self.violations == 0


def small_set_bound_check(n: int, k: int, q: int, m: int, trials: int,
                          seed: int = 0) -> SmallSetVerdict:
    """Sample cochains of varied support and test
    |d a| >= [n-k]_q |a| - |a|(|a|-1)."""
    rng = random.Random(seed)
    faces = enumerate_grassmannian(n, k, q)
    ring = ModRing(m)
    up = q_int(n - k, q)
    violations = vacuous = 0
    tightest = None
    for _ in range(trials):
        s = rng.randrange(1, len(faces) + 1)
        picked = rng.sample(faces, s)
        a = Chain.build(n, k, m, q, [(u, rng.randrange(1, m)) for u in picked])
        size = coboundary(a, ring).support_size()
        bound = up * a.support_size() - a.support_size() * (a.support_size() - 1)
        if bound <= 0:
            vacuous += 1
            continue
        slack = size - bound
        if slack < 0:
            violations += 1
        if tightest is None or slack < tightest:
            tightest = slack
    return SmallSetVerdict(trials=trials, violations=violations,
                           tightest_slack=0 if tightest is None else tightest,
                           vacuous=vacuous)


@dataclass
class RestrictionReport:
    n: int
    q: int
    m: int
    best: Fraction
    witness_index: int
    scanned: int
    sampled: bool

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "mod": self.m,
                "best_constant": str(self.best),
                "witness_index": self.witness_index,
                "scanned": self.scanned, "sampled": self.sampled,
                "verdict": "PASS" if self.best > 0 else "FAIL"}


def restriction_inequality(n: int, q: int, m: int,
                           sample_size: int = 1_000_000,
                           seed: int = 0) -> RestrictionReport:
    """Minimum of |d_1 a| / (|a| ([n]_q - |a|)) over 1-cochains with a
    positive denominator; exhaustive when the scan fits the budget,
    otherwise sampled (flagged)."""
    faces = enumerate_grassmannian(n, 1, q)
    dim = len(faces)
    total = m**dim
    inc = up_incidence(n, 1, q)
    sampled = total > _scan_cap()
    best: tuple[int, int, int] | None = None  # (num, den, index)

    def consider(start_index: int, block: np.ndarray) -> None:
        nonlocal best
        sizes = kernels.coboundary_sizes(inc, block, m)
        supp = np.count_nonzero(block, axis=0).astype(np.int64)
        den = supp * (dim - supp)
        mask = den > 0
        idxs = np.nonzero(mask)[0]
        if idxs.size == 0:
            return
        if best is None:
            j = int(idxs[0])
            best = (int(sizes[j]), int(den[j]), start_index + j)
        bn, bd, bi = best
        better = sizes[idxs] * bd < bn * den[idxs]
        for j in np.nonzero(better)[0]:
            cn, cd = int(sizes[idxs[j]]), int(den[idxs[j]])
            if cn * bd < bn * cd:
                bn, bd, bi = cn, cd, start_index + int(idxs[j])
        best = (bn, bd, bi)

    if not sampled:
        for start in range(0, total, _CHUNK):
            count = min(_CHUNK, total - start)
            consider(start, kernels.digit_block(start, count, m, dim))
        scanned = total
    else:
        rng = np.random.default_rng(seed)
        scanned = 0
        while scanned < sample_size:
            count = min(_CHUNK, sample_size - scanned)
            block = rng.integers(0, m, size=(dim, count), dtype=np.uint8)
            consider(-1, block)  # witness index meaningless when sampled
            scanned += count
    assert best is not None
    return RestrictionReport(n=n, q=q, m=m,
                             best=Fraction(best[0], best[1]),
                             witness_index=best[2], scanned=scanned,
                             sampled=sampled)


# ---------------------------------------------------------------------------
# Support graphs and the minimal-connected table


@dataclass(frozen=True)
class SupportGraph:
    vertices: tuple[Subspace, ...]
    edges: tuple[tuple[int, int], ...]

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        adj = {i: set() for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for t in adj[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == len(self.vertices)


def support_graph(a: Cochain) -> SupportGraph:
    """Vertices are the support; edges join faces meeting in codimension 1."""
    verts = a.support()
    k = a.k
    edges = []
    for i, j in combinations(range(len(verts)), 2):
        if intersect(verts[i], verts[j]).dim == k - 1:
            edges.append((i, j))
    return SupportGraph(vertices=verts, edges=tuple(edges))


@dataclass
class GTable:
    n: int
    k: int
    q: int
    m: int
    max_size: int
    theta_cutoff: Fraction
    buckets: dict[tuple[int, Fraction], int]

    def rows(self) -> list[tuple[int, Fraction, int]]:
        return sorted((s, th, c) for (s, th), c in self.buckets.items())

    def offenders(self) -> list[tuple[int, Fraction, int]]:
        return [(s, th, c) for s, th, c in self.rows() if th > self.theta_cutoff]


def enumerate_minimal_connected(n: int, k: int, q: int, m: int,
                                max_size: int) -> GTable:
    """Exhaustively bucket the cochains that are minimal in their coboundary
    class and have connected support, by (support size, coboundary deficiency
    theta)."""
    if (q + 1) % m != 0:
        from .errors import PreconditionError

        raise PreconditionError(f"the table needs m | q+1; got q={q}, m={m}")
    faces = enumerate_grassmannian(n, k, q)
    ring = ModRing(m)
    up = q_int(n - k, q)
    from math import comb

    count_est = sum((m - 1) ** s * comb(len(faces), s)
                    for s in range(1, min(max_size, len(faces)) + 1))
    if count_est > 5_000_000:
        raise BudgetError(f"{count_est} candidate cochains exceed the budget")
    buckets: dict[tuple[int, Fraction], int] = {}
    for s in range(1, max_size + 1):
        for supp in combinations(faces, s):
            graph_ok = None
            for coeffs in product(range(1, m), repeat=s):
                a = Chain.build(n, k, m, q, list(zip(supp, coeffs)))
                if class_norm(a) != s:
                    continue
                if graph_ok is None:
                    graph_ok = support_graph(a).is_connected()
                if not graph_ok:
                    continue
                d_size = coboundary(a, ring).support_size()
                theta = 1 - Fraction(d_size, s * up)
                key = (s, theta)
                buckets[key] = buckets.get(key, 0) + 1
    return GTable(n=n, k=k, q=q, m=m, max_size=max_size,
                  theta_cutoff=theta_threshold(k, q), buckets=buckets)


# ---------------------------------------------------------------------------
# Averaged contraction inequality (the counting step of the expansion proof)


def random_basis(n: int, q: int, rng: random.Random) -> OrderedBasis:
    from .subspace import span_of

    while True:
        vecs = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(n))
        if span_of(vecs, n, q).dim == n:
            return OrderedBasis(n=n, q=q, vectors=vecs)


def contraction_average_check(n: int, k: int, q: int, m: int,
                              n_alphas: int = 5, n_bases: int = 20,
                              seed: int = 0) -> bool:
    """Averaged over sampled bases s:
    mean |a - d iota_s a| <= |Gr_k| f(k) / |Gr_{k+1}| * |d a|."""
    rng = random.Random(seed)
    faces = enumerate_grassmannian(n, k, q)
    upper = enumerate_grassmannian(n, k + 1, q)
    ring = ModRing(m)
    factor = Fraction(len(faces) * cone_size_bound(k, q), len(upper))
    bases = [random_basis(n, q, rng) for _ in range(n_bases)]
    for _ in range(n_alphas):
        s = rng.randrange(1, 4)
        a = Chain.build(n, k, m, q,
                        [(u, rng.randrange(1, m)) for u in rng.sample(faces, s)])
        da_size = coboundary(a, ring).support_size()
        total = 0
        for b in bases:
            reduced = a.sub(coboundary(contraction(b, a, ring), ring))
            total += reduced.support_size()
        if Fraction(total, len(bases)) > factor * da_size:
            return False
    return True
