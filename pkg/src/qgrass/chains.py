"""Chains over Z/m on the complete q-complex, with boundary and coboundary.

The boundary of a subspace is the sum of its codimension-1 subspaces with
coefficient 1 (the modular signing); the coboundary is its adjoint.  On the
finite complete complex cochains are identified with chains through the
delta pairing, so a single Chain type plays both roles.

Coefficients are kept reduced to 0..m-1 and zero terms are dropped eagerly,
so the support size is always len(coeffs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Mapping

from .errors import PreconditionError
from .qarith import q_int
from .subspace import (
    Subspace,
    codim1_subspaces,
    contains,
    enumerate_grassmannian,
    grassmannian_index,
    perp,
    superspaces,
    superspaces_within,
    zero_space,
)


@dataclass(frozen=True)
class ModRing:
    """Arithmetic mod m; units are detected via gcd."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise PreconditionError("modulus must be at least 2")

    def reduce(self, x: int) -> int:
        return x % self.m

    def is_unit(self, x: int) -> bool:
        return gcd(x % self.m, self.m) == 1

    def inv(self, x: int) -> int:
        if not self.is_unit(x):
            raise PreconditionError(f"{x} is not invertible mod {self.m}")
        return pow(x % self.m, -1, self.m)


@dataclass(frozen=True)
class Chain:
    """A finitely supported map from k-subspaces of F_q^n to Z/m."""

    n: int
    k: int
    m: int
    q: int
    coeffs: Mapping[Subspace, int] = field(default_factory=dict)

    @staticmethod
    def build(n: int, k: int, m: int, q: int,
              terms: Iterable[tuple[Subspace, int]]) -> "Chain":
        acc: dict[Subspace, int] = {}
        for u, c in terms:
            if u.dim != k or u.n != n or u.q != q:
                raise PreconditionError(
                    f"term {u} does not live at level {k} of Gr(F_{q}^{n})")
            acc[u] = (acc.get(u, 0) + c) % m
        return Chain(n=n, k=k, m=m, q=q,
                     coeffs={u: c for u, c in acc.items() if c})

    @staticmethod
    def zero(n: int, k: int, m: int, q: int) -> "Chain":
        return Chain(n=n, k=k, m=m, q=q, coeffs={})

    @staticmethod
    def generator(u: Subspace, m: int, coeff: int = 1) -> "Chain":
        return Chain.build(u.n, u.dim, m, u.q, [(u, coeff)])

    def support(self) -> tuple[Subspace, ...]:
        return tuple(sorted(self.coeffs))

    def support_size(self) -> int:
        return len(self.coeffs)

    def coeff(self, u: Subspace) -> int:
        return self.coeffs.get(u, 0)

    def items(self) -> Iterator[tuple[Subspace, int]]:
        return iter(sorted(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _like(self, other: "Chain") -> None:
        if (self.n, self.k, self.m, self.q) != (other.n, other.k, other.m, other.q):
            raise PreconditionError("chain shape mismatch")

    def add(self, other: "Chain") -> "Chain":
        self._like(other)
        acc = dict(self.coeffs)
        for u, c in other.coeffs.items():
            v = (acc.get(u, 0) + c) % self.m
            if v:
                acc[u] = v
            else:
                acc.pop(u, None)
        return Chain(self.n, self.k, self.m, self.q, acc)

    def scale(self, r: int) -> "Chain":
        r %= self.m
        if r == 0:
            return Chain.zero(self.n, self.k, self.m, self.q)
        acc = {}
        for u, c in self.coeffs.items():
            v = (c * r) % self.m
            if v:
                acc[u] = v
        return Chain(self.n, self.k, self.m, self.q, acc)

    def sub(self, other: "Chain") -> "Chain":
        return self.add(other.scale(self.m - 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.n, self.k, self.m, self.q) == (other.n, other.k, other.m, other.q) \
            and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.n, self.k, self.m, self.q,
                     tuple(sorted(self.coeffs.items()))))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "terms": [
                {"subspace": u.to_json(), "coeff": c} for u, c in self.items()
            ],
        }

    @staticmethod
    def from_json(obj: dict, q: int) -> "Chain":
        terms = [
            (Subspace.from_json(t["subspace"], q), int(t["coeff"]))
            for t in obj["terms"]
        ]
        return Chain.build(obj["n"], obj["k"], obj["m"], q, terms)


Cochain = Chain  # identified on the finite complete complex


def dump_json(obj: dict) -> str:
    """Canonical JSON encoding used for golden output tests."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def zero_chain_generator(n: int, m: int, q: int, coeff: int = 1) -> Chain:
    """The 0-chain 1*Span{0} (written with a bold zero in the literature)."""
    return Chain.generator(zero_space(n, q), m, coeff)


def _check_ring(x: Chain, ring: ModRing) -> None:
    if x.m != ring.m:
        raise PreconditionError(f"chain modulus {x.m} does not match ring {ring.m}")


def boundary(x: Chain, ring: ModRing) -> Chain:
    """Linear extension of U -> sum of codim-1 subspaces of U.

    Level-0 chains map to the zero chain (the complex ends at Span{0}).
    """
    _check_ring(x, ring)
    if x.k == 0:
        return Chain.zero(x.n, 0, x.m, x.q)
    acc: dict[Subspace, int] = {}
    for u, c in x.coeffs.items():
        for w in codim1_subspaces(u):
            acc[w] = (acc.get(w, 0) + c) % x.m
    return Chain(x.n, x.k - 1, x.m, x.q, {u: c for u, c in acc.items() if c})


def coboundary(a: Cochain, ring: ModRing, within: Subspace | None = None) -> Cochain:
    """Adjoint of the boundary: (d a)(U) = sum of a over codim-1 faces of U.

    With `within` set, superspaces are taken inside that subspace only (the
    restricted coboundary used by the cone recursion).
    """
    _check_ring(a, ring)
    if a.k >= a.n:
        return Chain.zero(a.n, a.k + 1, a.m, a.q)
    acc: dict[Subspace, int] = {}
    for w, c in a.coeffs.items():
        ups = superspaces(w) if within is None else superspaces_within(w, within)
        for u in ups:
            acc[u] = (acc.get(u, 0) + c) % a.m
    return Chain(a.n, a.k + 1, a.m, a.q, {u: c for u, c in acc.items() if c})


def bilinear(a: Cochain, b: Cochain) -> int:
    """The pairing sum_W a(W) b(W) mod m."""
    if (a.n, a.k, a.m, a.q) != (b.n, b.k, b.m, b.q):
        raise PreconditionError("bilinear form needs matching level and ring")
    small, large = (a, b) if len(a.coeffs) <= len(b.coeffs) else (b, a)
    return sum(c * large.coeff(u) for u, c in small.coeffs.items()) % a.m


def perp_chain(x: Chain) -> Cochain:
    """Apply the standard-form perp to every support element.

    Intertwines boundary and coboundary: perp(boundary x) = coboundary(perp x).
    """
    return Chain.build(x.n, x.n - x.k, x.m, x.q,
                       [(perp(u), c) for u, c in x.coeffs.items()])


def restrict(a: Cochain, h: Subspace) -> Cochain:
    """Keep only support elements contained in h."""
    return Chain(a.n, a.k, a.m, a.q,
                 {u: c for u, c in a.coeffs.items() if contains(h, u)})


def d_squared_defect(n: int, k: int, q: int, m: int) -> int:
    """The scalar (q+1) mod m, certified by direct computation of the double
    boundary on every level-k generator."""
    if k < 2:
        raise PreconditionError("need k >= 2 for a double boundary")
    ring = ModRing(m)
    expect = (q + 1) % m
    for u in enumerate_grassmannian(n, k, q):
        dd = boundary(boundary(Chain.generator(u, m), ring), ring)
        codim2 = {w for hyper in codim1_subspaces(u) for w in codim1_subspaces(hyper)}
        target = Chain.build(n, k - 2, m, q, [(w, expect) for w in codim2])
        if dd != target:
            from .errors import InternalCheckError
            raise InternalCheckError(f"double boundary defect wrong at {u}")
    return expect


def heisenberg_defect(n: int, k: int, q: int, m: int) -> int:
    """Verify (boundary . coboundary - coboundary . boundary) acts as a
    scalar on every level-k generator and return that scalar,
    ([n-k]_q - [k]_q) mod m."""
    if not 1 <= k <= n - 1:
        raise PreconditionError("need 1 <= k <= n-1")
    ring = ModRing(m)
    lam = (q_int(n - k, q) - q_int(k, q)) % m
    for u in enumerate_grassmannian(n, k, q):
        g = Chain.generator(u, m)
        diff = boundary(coboundary(g, ring), ring).sub(
            coboundary(boundary(g, ring), ring))
        if diff != g.scale(lam):
            from .errors import InternalCheckError
            raise InternalCheckError(f"walk identity violated at {u}")
    return lam


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse level-k boundary operator in canonical coordinates.

    Column j lists the row indices of the codim-1 faces of the j-th
    k-subspace; every entry of the matrix is 1 mod m.
    """

    n: int
    k: int
    q: int
    m: int
    n_rows: int
    n_cols: int
    cols: tuple[tuple[int, ...], ...]

    def apply(self, x: Chain) -> Chain:
        if x.k != self.k:
            raise PreconditionError("level mismatch")
        col_index = grassmannian_index(self.n, self.k, self.q)
        rows = enumerate_grassmannian(self.n, self.k - 1, self.q)
        acc = [0] * self.n_rows
        for u, c in x.coeffs.items():
            for r in self.cols[col_index[u]]:
                acc[r] = (acc[r] + c) % self.m
        return Chain.build(self.n, self.k - 1, self.m, self.q,
                           [(rows[i], v) for i, v in enumerate(acc) if v])

    def dense(self):
        import numpy as np

        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for j, col in enumerate(self.cols):
            for i in col:
                out[i, j] = 1
        return out


def boundary_matrix(n: int, k: int, q: int, m: int) -> BoundaryMatrix:
    """Materialize the boundary operator C_k -> C_{k-1} over Z/m."""
    if not 1 <= k <= n:
        raise PreconditionError("need 1 <= k <= n")
    rows = grassmannian_index(n, k - 1, q)
    columns = enumerate_grassmannian(n, k, q)
    cols = tuple(
        tuple(sorted(rows[w] for w in codim1_subspaces(u))) for u in columns
    )
    return BoundaryMatrix(n=n, k=k, q=q, m=m, n_rows=len(rows),
                          n_cols=len(columns), cols=cols)
