"""The recursive cone construction, contraction, and compact kernel generators.

A cone attaches to every k-chain x a (k+1)-chain c(x) with
boundary(c(x)) = x - c(boundary(x)).  The construction localizes the walk
identity of chains.heisenberg_defect to the (2k+1)-dimensional space
obtained by appending ordered basis vectors to each support element, which
keeps cone supports small.

Two scalings are implemented: the "modular" one (sign (-1)^k, needs
m | q+1) and the "general" one (scale q^(-k), needs q invertible mod m).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError
from .chains import Chain, Cochain, ModRing, bilinear, boundary, coboundary
from .qarith import q_int
from .subspace import (
    Subspace,
    Vector,
    enumerate_grassmannian,
    rref,
    span_of,
)

VARIANTS = ("modular", "general")


@dataclass(frozen=True)
class OrderedBasis:
    """An ordered tuple of independent vectors of F_q^n.

    Coning a level-k chain consults only the first 2k+1 vectors, so a
    partial list is accepted as long as it is long enough for the levels
    it is used at (the two-cone middle-cycle recursion relies on this).
    """

    n: int
    q: int
    vectors: tuple[Vector, ...]

    def __post_init__(self):
        if span_of(self.vectors, self.n, self.q).dim != len(self.vectors):
            raise PreconditionError("basis vectors must be independent")
        if len(self.vectors) > self.n:
            raise PreconditionError("more vectors than the ambient dimension")

    @staticmethod
    def standard(n: int, q: int, count: int | None = None) -> "OrderedBasis":
        count = n if count is None else count
        vecs = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(count)
        )
        return OrderedBasis(n=n, q=q, vectors=vecs)


def w_extension(w: Subspace, b: OrderedBasis) -> Subspace:
    """The first space of dimension 2k+1 reached from the k-space w by
    appending b's vectors in order."""
    k = w.dim
    target = 2 * k + 1
    if target > b.n:
        raise PreconditionError(f"2k+1 = {target} exceeds ambient {b.n}")
    cur = w
    if cur.dim == target:
        return cur
    for v in b.vectors:
        cur = rref(cur.rows + (v,), b.n, b.q)
        if cur.dim == target:
            return cur
    raise PreconditionError(
        f"basis has too few vectors to reach dimension {target} from {w}")


def cone_size_bound(k: int, q: int) -> int:
    """f(k) from the recursion f(k) = [k+1]_q (1 + [k]_q f(k-1)), f(0) = 1."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    f = 1
    for j in range(1, k + 1):
        f = q_int(j + 1, q) * (1 + q_int(j, q) * f)
    return f


class ConeCache:
    """Memoized cone recursion for one (basis, ring, variant) triple.

    The recursion revisits shared faces heavily; caching per subspace makes
    the work proportional to the output.  Results are deterministic, so
    concurrent readers racing on inserts would still agree; CPython's dict
    operations are atomic enough for that pattern.
    """

    def __init__(self, basis: OrderedBasis, ring: ModRing,
                 variant: str = "modular"):
        if variant not in VARIANTS:
            raise PreconditionError(f"unknown cone variant {variant!r}")
        q = basis.q
        if variant == "modular":
            if (q + 1) % ring.m != 0:
                raise PreconditionError(
                    f"modular cones need m | q+1; got q={q}, m={ring.m}")
        else:
            if gcd(q, ring.m) != 1:
                raise PreconditionError(
                    f"general cones need q invertible mod m; got q={q}, m={ring.m}")
        self.basis = basis
        self.ring = ring
        self.variant = variant
        self._memo: dict[Subspace, Chain] = {}

    def _scale_factor(self, k: int) -> int:
        m = self.ring.m
        if self.variant == "modular":
            return (m - 1) ** (k % 2) % m  # (-1)^k
        return pow(self.ring.inv(self.basis.q), k, m)

    def of_subspace(self, w: Subspace) -> Chain:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        ring, m = self.ring, self.ring.m
        k = w.dim
        if k == 0:
            first = rref((self.basis.vectors[0],), self.basis.n, self.basis.q)
            out = Chain.generator(first, m)
        else:
            arena = w_extension(w, self.basis)
            inner = Chain.generator(w, m).sub(
                self.of_chain(boundary(Chain.generator(w, m), ring)))
            out = coboundary(inner.scale(self._scale_factor(k)), ring,
                             within=arena)
        self._memo[w] = out
        return out

    def of_chain(self, x: Chain) -> Chain:
        out = Chain.zero(x.n, x.k + 1, x.m, x.q)
        for u, c in x.coeffs.items():
            out = out.add(self.of_subspace(u).scale(c))
        return out


_CACHES: dict[tuple, ConeCache] = {}


def _cache_for(b: OrderedBasis, ring: ModRing, variant: str) -> ConeCache:
    key = (b.n, b.q, b.vectors, ring.m, variant)
    cache = _CACHES.get(key)
    if cache is None:
        cache = _CACHES[key] = ConeCache(b, ring, variant)
    return cache


def _check_level_admissible(k: int, q: int, ring: ModRing, variant: str) -> None:
    # The recursion's telescoping needs the double boundary to vanish on
    # every level below k.  That is automatic for k <= 1, and holds at all
    # levels exactly when m | q+1; the q^(-k) scaling alone does not rescue
    # deeper levels (checked computationally: the identity fails for every
    # 2-space at q=2, m=5).
    if variant == "general" and k >= 2 and (q + 1) % ring.m != 0:
        raise PreconditionError(
            "general-variant cones certify the cone identity only up to "
            f"level 1 unless m | q+1; got level {k}, q={q}, m={ring.m}")


def cone(b: OrderedBasis, x: Chain, ring: ModRing,
         variant: str = "modular") -> Chain:
    """Cone of a chain with respect to an ordered basis.

    Requires 2k+1 <= n for the chain's level k, plus the variant's ring
    condition; see ConeCache.
    """
    if 2 * x.k + 1 > x.n:
        raise PreconditionError(
            f"cone undefined at level {x.k} of ambient {x.n}")
    if x.m != ring.m:
        raise PreconditionError("chain modulus does not match ring")
    _check_level_admissible(x.k, x.q, ring, variant)
    return _cache_for(b, ring, variant).of_chain(x)


def cone_identity_defect(b: OrderedBasis, x: Chain, ring: ModRing,
                         variant: str = "modular") -> Chain:
    """boundary(cone x) - (x - cone(boundary x)); the zero chain when the
    cone identity holds.  At level 0 the boundary term is the zero chain at
    level 0 (there is no level below the zero space)."""
    lhs = boundary(cone(b, x, ring, variant), ring)
    if x.k == 0:
        rhs = x
    else:
        rhs = x.sub(cone(b, boundary(x, ring), ring, variant))
    return lhs.sub(rhs)


def contraction(b: OrderedBasis, a: Cochain, ring: ModRing,
                variant: str = "modular") -> Cochain:
    """The contraction (iota a)(W) = a(cone of W), one level below a."""
    if a.k == 0:
        return Chain.zero(a.n, 0, a.m, a.q)  # no level below Span{0}
    if 2 * (a.k - 1) + 1 > a.n:
        raise PreconditionError("contraction needs 2(k-1)+1 <= n")
    cache = _cache_for(b, ring, variant)
    terms = []
    for w in enumerate_grassmannian(a.n, a.k - 1, a.q):
        v = bilinear(a, cache.of_subspace(w))
        if v:
            terms.append((w, v))
    return Chain.build(a.n, a.k - 1, a.m, a.q, terms)


@dataclass(frozen=True)
class SmallGenerator:
    chain: Chain
    support_span: Subspace


def small_generators(n: int, k: int, q: int, m: int,
                     basis: OrderedBasis | None = None) -> list[SmallGenerator]:
    """The kernel generators {W - cone(boundary W)} over one fixed basis.

    Each returned chain is certified to (i) lie in the kernel of the
    boundary, (ii) have support spanning at most 2k dimensions.  Spanning of
    the whole kernel is the caller's cross-check (see homology.spans_kernel).
    """
    if not k < n / 2:
        raise PreconditionError("compact generators are only built for k < n/2")
    if gcd(q, m) != 1:
        raise PreconditionError("need q invertible mod m")
    ring = ModRing(m)
    _check_level_admissible(k, q, ring, "general")
    if basis is None:
        basis = OrderedBasis.standard(n, q)
    cache = _cache_for(basis, ring, "general")
    out = []
    for w in enumerate_grassmannian(n, k, q):
        g = Chain.generator(w, m)
        member = g.sub(cache.of_chain(boundary(g, ring)))
        if not boundary(member, ring).is_zero():
            from .errors import InternalCheckError
            raise InternalCheckError(f"generator at {w} is not a cycle")
        vectors = [r for u in member.coeffs for r in u.rows]
        span = span_of(vectors, n, q)
        if span.dim > 2 * k:
            from .errors import InternalCheckError
            raise InternalCheckError(
                f"generator at {w} spans {span.dim} > 2k dimensions")
        out.append(SmallGenerator(chain=member, support_span=span))
    return out
