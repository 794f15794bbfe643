"""Canonical subspaces of F_q^n and their lattice operations.

A Subspace is stored as its reduced row echelon basis (tuple of coordinate
tuples), which is a unique representative: two Subspace values are equal as
records exactly when they are equal as sets of vectors.  All enumeration
orders are lexicographic on the RREF matrix, so every module downstream
inherits one deterministic order.

Row reduction over F_2 runs on bit-packed integer rows; general q goes
through the FieldSpec tables one entry at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import PreconditionError
from .field import FieldSpec, make_field
from .qarith import gaussian_binomial

Vector = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Subspace:
    """A k-dimensional subspace of F_q^n in canonical RREF form.

    Ordering compares (q, n, rows); within a fixed Grassmannian this is the
    canonical lexicographic order used everywhere.
    """

    q: int
    n: int
    rows: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> FieldSpec:
        return make_field(self.q)

    def vectors(self) -> Iterator[Vector]:
        """All q^dim vectors of the subspace (including zero)."""
        f = self.field
        for coeffs in product(range(self.q), repeat=self.dim):
            yield _combine(coeffs, self.rows, self.n, f)

    def contains_vector(self, v: Vector) -> bool:
        return _reduce_vector(v, self.rows, self.field) is None

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.dim, "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(obj: dict, q: int) -> "Subspace":
        rows = [tuple(int(x) for x in r) for r in obj["rows"]]
        sub = rref(rows, obj["n"], q)
        if sub.rows != tuple(rows):
            raise PreconditionError("rows are not in canonical RREF form")
        if sub.dim != obj["k"]:
            raise PreconditionError("stated k does not match rank")
        return sub

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, n={self.n}, rows={self.rows})"


def zero_space(n: int, q: int) -> Subspace:
    return Subspace(q=q, n=n, rows=())


def full_space(n: int, q: int) -> Subspace:
    rows = tuple(standard_vector(i, n) for i in range(n))
    return Subspace(q=q, n=n, rows=rows)


def standard_vector(i: int, n: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def _combine(coeffs: Iterable[int], rows: tuple[Vector, ...], n: int,
             f: FieldSpec) -> Vector:
    acc = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            mul_c = f.mul[c]
            add = f.add
            for j, x in enumerate(row):
                if x:
                    acc[j] = add[acc[j]][mul_c[x]]
    return tuple(acc)


def _reduce_vector(v: Vector, rref_rows: tuple[Vector, ...],
                   f: FieldSpec) -> Vector | None:
    """Reduce v against RREF rows; return the residue, or None if v is in
    the span."""
    acc = list(v)
    add, mul, neg = f.add, f.mul, f.neg
    for row in rref_rows:
        piv = _pivot(row)
        c = acc[piv]
        if c:
            mc = mul[neg[c]]
            for j in range(piv, len(acc)):
                if row[j]:
                    acc[j] = add[acc[j]][mc[row[j]]]
    if any(acc):
        return tuple(acc)
    return None


def _pivot(row: Vector) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row has no pivot")


# ---------------------------------------------------------------------------
# Row reduction


def _rref_gf2(rows: list[int], n: int) -> list[int]:
    """RREF of bit-packed rows over F_2 (bit j = coordinate j)."""
    basis: list[int] = []  # kept sorted by pivot column
    for r in rows:
        for b in basis:
            p = _msb_pivot(b, n)
            if (r >> (n - 1 - p)) & 1:
                r ^= b
        if r:
            basis.append(r)
            basis.sort(key=lambda x: _msb_pivot(x, n))
            # back-substitute to clear entries above the new pivots
            for i in range(len(basis) - 1, -1, -1):
                p = _msb_pivot(basis[i], n)
                for j in range(i):
                    if (basis[j] >> (n - 1 - p)) & 1:
                        basis[j] ^= basis[i]
    return basis


def _msb_pivot(packed: int, n: int) -> int:
    return n - packed.bit_length()


def _pack(v: Vector, n: int) -> int:
    out = 0
    for j, x in enumerate(v):
        if x:
            out |= 1 << (n - 1 - j)
    return out


def _unpack(packed: int, n: int) -> Vector:
    return tuple((packed >> (n - 1 - j)) & 1 for j in range(n))


def rref(rows: Iterable[Vector], n: int, q: int) -> Subspace:
    """Canonicalize a spanning set into a Subspace.

    Zero and dependent rows are discarded; an empty input yields the
    dim-0 subspace.
    """
    rows = list(rows)
    for r in rows:
        if len(r) != n:
            raise PreconditionError("all rows must share the ambient dimension")
    if q == 2:
        packed = _rref_gf2([_pack(r, n) for r in rows], n)
        return Subspace(q=q, n=n, rows=tuple(_unpack(b, n) for b in packed))

    f = make_field(q)
    basis: list[list[int]] = []
    for r in rows:
        acc = list(r)
        for b in basis:
            p = _pivot(tuple(b))
            c = acc[p]
            if c:
                mc = f.mul[f.neg[c]]
                for j in range(p, n):
                    if b[j]:
                        acc[j] = f.add[acc[j]][mc[b[j]]]
        if any(acc):
            p = next(j for j, x in enumerate(acc) if x)
            inv = f.inv[acc[p]]
            mi = f.mul[inv]
            acc = [mi[x] for x in acc]
            basis.append(acc)
            basis.sort(key=lambda row: _pivot(tuple(row)))
            # clear above pivots
            for i in range(len(basis) - 1, -1, -1):
                p = _pivot(tuple(basis[i]))
                for j in range(len(basis)):
                    if j != i and basis[j][p]:
                        c = basis[j][p]
                        mc = f.mul[f.neg[c]]
                        for t in range(p, n):
                            if basis[i][t]:
                                basis[j][t] = f.add[basis[j][t]][mc[basis[i][t]]]
    return Subspace(q=q, n=n, rows=tuple(tuple(r) for r in basis))


def span_of(vectors: Iterable[Vector], n: int, q: int) -> Subspace:
    return rref(vectors, n, q)


# ---------------------------------------------------------------------------
# Enumeration


@lru_cache(maxsize=None)
def enumerate_grassmannian(n: int, k: int, q: int) -> tuple[Subspace, ...]:
    """All k-subspaces of F_q^n in lexicographic RREF order.

    Generates RREF matrices directly from pivot patterns, so the work is
    linear in the output size.
    """
    if k < 0 or k > n:
        return ()
    if k == 0:
        return (zero_space(n, q),)
    out: list[Subspace] = []
    for pivots in combinations(range(n), k):
        free_slots = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivots
        ]
        for values in product(range(q), repeat=len(free_slots)):
            mat = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                mat[i][p] = 1
            for (i, j), v in zip(free_slots, values):
                mat[i][j] = v
            out.append(Subspace(q=q, n=n, rows=tuple(tuple(r) for r in mat)))
    out.sort()
    assert len(out) == gaussian_binomial(n, k, q)
    return tuple(out)


@lru_cache(maxsize=None)
def grassmannian_index(n: int, k: int, q: int) -> dict[Subspace, int]:
    """Canonical index of each k-subspace within its Grassmannian."""
    return {u: i for i, u in enumerate(enumerate_grassmannian(n, k, q))}


# ---------------------------------------------------------------------------
# Lattice operations


def _check_same_ambient(u: Subspace, w: Subspace) -> None:
    if u.n != w.n or u.q != w.q:
        raise PreconditionError(
            f"ambient mismatch: ({u.q},{u.n}) vs ({w.q},{w.n})")


def sum_spaces(u: Subspace, w: Subspace) -> Subspace:
    _check_same_ambient(u, w)
    return rref(u.rows + w.rows, u.n, u.q)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_same_ambient(u, w)
    return perp(sum_spaces(perp(u), perp(w)))


def contains(u: Subspace, w: Subspace) -> bool:
    """True when w is a subspace of u."""
    _check_same_ambient(u, w)
    if w.dim > u.dim:
        return False
    f = u.field
    return all(_reduce_vector(r, u.rows, f) is None for r in w.rows)


def perp(u: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot form sum x_i y_i."""
    n, q = u.n, u.q
    if u.dim == 0:
        return full_space(n, q)
    f = make_field(q)
    pivots = [_pivot(r) for r in u.rows]
    free = [j for j in range(n) if j not in pivots]
    out: list[Vector] = []
    # For each free column j, the vector with 1 at j and -row[i][j] at each
    # pivot column solves <v, row_i> = 0 for all i.
    for j in free:
        v = [0] * n
        v[j] = 1
        for i, p in enumerate(pivots):
            v[p] = f.neg[u.rows[i][j]]
        out.append(tuple(v))
    return rref(out, n, q)


def codim1_subspaces(u: Subspace) -> tuple[Subspace, ...]:
    """All hyperplanes of u ([k]_q of them); empty for the zero space."""
    k = u.dim
    if k == 0:
        return ()
    f = u.field
    out = []
    for inner in enumerate_grassmannian(k, k - 1, u.q):
        rows = [_combine(c, u.rows, u.n, f) for c in inner.rows]
        out.append(rref(rows, u.n, u.q))
    return tuple(out)


def _extend_independent(base: Subspace, candidates: Iterable[Vector]) -> list[Vector]:
    """Greedily pick candidate vectors independent of base and of each other."""
    f = base.field
    picked: list[Vector] = []
    current = base
    for v in candidates:
        if not current.contains_vector(v):
            picked.append(v)
            current = rref(current.rows + (v,), base.n, base.q)
    return picked


def complement_in(u: Subspace, h: Subspace) -> list[Vector]:
    """Vectors extending a basis of u to a basis of h (u must lie in h)."""
    return _extend_independent(u, h.rows)


def superspaces_within(u: Subspace, h: Subspace) -> tuple[Subspace, ...]:
    """All (dim u + 1)-subspaces of h containing u; [dim h - dim u]_q many."""
    _check_same_ambient(u, h)
    comp = complement_in(u, h)
    if not comp:
        return ()
    f = u.field
    out = []
    d = len(comp)
    # normalized coefficient vectors = one representative per line of h/u
    for lead in range(d):
        for tail in product(range(u.q), repeat=d - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            v = _combine(coeffs, tuple(comp), u.n, f)
            out.append(rref(u.rows + (v,), u.n, u.q))
    return tuple(out)


def superspaces(u: Subspace) -> tuple[Subspace, ...]:
    """All (dim u + 1)-subspaces of the ambient containing u."""
    return superspaces_within(u, full_space(u.n, u.q))
