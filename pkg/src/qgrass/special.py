"""Explicit middle-dimension cycles: the two-cone chain, the signed sum of
maximal totally singular spaces, and the pairing certificate between them.

Everything lives in Gr(F_q^{2n}).  The two-cone chain comes out of the cone
recursion applied alternately with the two halves of a hyperbolic pair of
index vectors; the singular-space chain comes from an orthogonal quadratic
form.  Their pairing being a unit certifies both are homologically
nontrivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from ._kernels import rank_modp
from .chains import Chain, Cochain, ModRing, bilinear, boundary, coboundary
from .cones import OrderedBasis, cone
from .errors import InternalCheckError, PreconditionError, SupportCollisionError
from .field import FieldSpec, make_field
from .qarith import mts_count
from .subspace import (
    Subspace,
    Vector,
    enumerate_grassmannian,
    intersect,
    rref,
    standard_vector,
)


def _require_modulus(q: int, m: int) -> None:
    if (q + 1) % m != 0:
        raise PreconditionError(f"need m | q+1; got q={q}, m={m}")


# ---------------------------------------------------------------------------
# Quadratic forms


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum_{i<=j} coeffs[i][j] x_i x_j over F_q, with polarization
    B(u,v) = Q(u+v) - Q(u) - Q(v)."""

    n: int
    q: int
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def field(self) -> FieldSpec:
        return make_field(self.q)

    def evaluate(self, v: Vector) -> int:
        f = self.field
        acc = 0
        for i in range(self.n):
            if not v[i]:
                continue
            row = self.coeffs[i]
            for j in range(i, self.n):
                c = row[j]
                if c and v[j]:
                    acc = f.add[acc][f.mul[c][f.mul[v[i]][v[j]]]]
        return acc

    def polarization(self, u: Vector, v: Vector) -> int:
        f = self.field
        s = tuple(f.add[a][b] for a, b in zip(u, v))
        return f.sub(f.sub(self.evaluate(s), self.evaluate(u)), self.evaluate(v))

    def gram_matrix(self) -> list[list[int]]:
        basis = [standard_vector(i, self.n) for i in range(self.n)]
        return [[self.polarization(u, v) for v in basis] for u in basis]

    def is_nondegenerate(self) -> bool:
        import numpy as np

        g = np.array(self.gram_matrix(), dtype=np.int64)
        if self.field.e > 1:
            # rank over an extension field: eliminate with table arithmetic
            return _rank_tablefield(self.gram_matrix(), self.field) == self.n
        return rank_modp(g, self.q) == self.n


def _rank_tablefield(rows: list[list[int]], f: FieldSpec) -> int:
    mat = [row[:] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = f.inv[mat[rank][c]]
        mat[rank] = [f.mul[inv][x] for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                neg = f.neg[mat[i][c]]
                mat[i] = [f.add[x][f.mul[neg][y]] for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def hyperbolic_form(n: int, q: int) -> QuadraticForm:
    """The split form x_1 x_2 + x_3 x_4 + ... on F_q^{2n}."""
    dim = 2 * n
    coeffs = [[0] * dim for _ in range(dim)]
    for i in range(n):
        coeffs[2 * i][2 * i + 1] = 1
    return QuadraticForm(n=dim, q=q, coeffs=tuple(tuple(r) for r in coeffs))


def pairing_form(n: int, q: int) -> QuadraticForm:
    """The form whose hyperbolic pairs are {e_{2i-1}, e_{2i-1}+e_{2i}}:
    sum_i (x_{2i-1} x_{2i} - x_{2i}^2)."""
    dim = 2 * n
    f = make_field(q)
    coeffs = [[0] * dim for _ in range(dim)]
    for i in range(n):
        coeffs[2 * i][2 * i + 1] = 1
        coeffs[2 * i + 1][2 * i + 1] = f.neg[1]
    return QuadraticForm(n=dim, q=q, coeffs=tuple(tuple(r) for r in coeffs))


def is_totally_singular(w: Subspace, form: QuadraticForm) -> bool:
    """Q and its polarization vanish identically on w.

    Checking Q on a basis, B on basis pairs, and Q on pairwise sums of basis
    vectors certifies the whole subspace (the char-2 case needs the Q
    checks; B alone loses information there).
    """
    if w.n != form.n or w.q != form.q:
        raise PreconditionError("ambient mismatch between subspace and form")
    rows = w.rows
    for r in rows:
        if form.evaluate(r):
            return False
    f = form.field
    for a, b in combinations(rows, 2):
        if form.polarization(a, b):
            return False
        s = tuple(f.add[x][y] for x, y in zip(a, b))
        if form.evaluate(s):
            return False
    return True


@dataclass(frozen=True)
class SignedFamily:
    """Maximal totally singular spaces with the parity signs relative to a
    fixed reference member (the first in canonical order)."""

    reference: Subspace
    members: tuple[tuple[Subspace, int], ...]

    def sign_of(self, w: Subspace) -> int:
        for u, s in self.members:
            if u == w:
                return s
        raise KeyError(w)


def max_singular_dimension(form: QuadraticForm, up_to: int) -> int:
    witt = 0
    for k in range(1, up_to + 1):
        if any(is_totally_singular(w, form)
               for w in enumerate_grassmannian(form.n, k, form.q)):
            witt = k
        else:
            break
    return witt


def enumerate_mts(form: QuadraticForm) -> SignedFamily:
    """All maximal totally singular spaces, signed by intersection parity
    with the first member.  Requires the maximal singular dimension to be
    exactly half the ambient dimension."""
    if form.n % 2 != 0:
        raise PreconditionError("need an even-dimensional ambient space")
    if not form.is_nondegenerate():
        raise PreconditionError("polarization is degenerate; no polar geometry")
    half = form.n // 2
    members = [w for w in enumerate_grassmannian(form.n, half, form.q)
               if is_totally_singular(w, form)]
    if not members:
        witt = max_singular_dimension(form, half)
        raise PreconditionError(
            f"form has Witt index {witt}, not {half}; not a split form")
    bigger = any(is_totally_singular(w, form)
                 for w in enumerate_grassmannian(form.n, half + 1, form.q)) \
        if half + 1 <= form.n else False
    if bigger:
        raise PreconditionError("singular spaces above half dimension found")
    ref = members[0]
    signed = tuple(
        (w, (-1) ** (half - intersect(ref, w).dim)) for w in members
    )
    expected = mts_count(half, form.q)
    if len(signed) != expected:
        raise InternalCheckError(
            f"found {len(signed)} maximal singular spaces, expected {expected}")
    return SignedFamily(reference=ref, members=signed)


def psi(n: int, q: int, m: int, form: QuadraticForm | None = None) -> Chain:
    """The signed sum of maximal totally singular spaces as a cycle mod m."""
    _require_modulus(q, m)
    fam = enumerate_mts(form if form is not None else hyperbolic_form(n, q))
    ch = Chain.build(2 * n, n, m, q, [(w, s % m) for w, s in fam.members])
    if not boundary(ch, ModRing(m)).is_zero():
        raise InternalCheckError("signed singular-space sum is not a cycle")
    return ch


# ---------------------------------------------------------------------------
# The two-cone recursion and its closed form


def eta_recursive(n: int, q: int, m: int) -> Chain:
    """The middle cycle built by alternating cones over e_{2i-1} and e_{2i}."""
    _require_modulus(q, m)
    dim = 2 * n
    ring = ModRing(m)
    ch = Chain.generator(rref([], dim, q), m)  # 1 * Span{0}
    for i in range(1, n + 1):
        plus = OrderedBasis(dim, q, tuple(
            standard_vector(j, dim) for j in range(2 * i - 2)
        ) + (standard_vector(2 * i - 2, dim),))
        minus = OrderedBasis(dim, q, tuple(
            standard_vector(j, dim) for j in range(2 * i - 2)
        ) + (standard_vector(2 * i - 1, dim),))
        ch = cone(plus, ch, ring).sub(cone(minus, ch, ring))
    return ch


def eta_explicit(n: int, q: int, m: int) -> Chain:
    """Closed form of the two-cone cycle: a signed sum over sign patterns
    and strictly-lower-triangular coefficient arrays.

    Raises SupportCollisionError if two index tuples produce the same
    subspace (the support-size formula assumes they never do; this is
    verified rather than assumed).
    """
    _require_modulus(q, m)
    dim = 2 * n
    f = make_field(q)
    global_sign = (-1) ** (n * (n - 1) // 2)
    seen: dict[Subspace, tuple] = {}
    terms = []
    lower_slots = [(i, j) for i in range(1, n) for j in range(i)]
    for eps in product((0, 1), repeat=n):
        for avals in product(range(q), repeat=len(lower_slots)):
            a = {}
            for (i, j), v in zip(lower_slots, avals):
                a[(i, j)] = v
            vecs = []
            for i in range(n):
                v = [0] * dim
                for j in range(i):
                    c = a[(i, j)]
                    if c:
                        col = 2 * j + 1 - eps[j]  # e_{2(j+1) - eps_{j+1}}, 0-based
                        v[col] = f.add[v[col]][c]
                lead = 2 * i + eps[i]  # e_{2i-1} or e_{2i}, 0-based
                v[lead] = f.add[v[lead]][1]
                vecs.append(tuple(v))
            w = rref(vecs, dim, q)
            if w.dim != n:
                raise InternalCheckError("index vectors were not independent")
            key = (eps, avals)
            if w in seen:
                raise SupportCollisionError(
                    f"indices {seen[w]} and {key} give the same space {w}")
            seen[w] = key
            sign = global_sign * (-1) ** sum(eps)
            terms.append((w, sign % m))
    return Chain.build(dim, n, m, q, terms)


# ---------------------------------------------------------------------------
# Pairing and nontriviality


@dataclass(frozen=True)
class PairingReport:
    n: int
    q: int
    m: int
    value: int
    common_support: tuple[Subspace, ...]
    reference_sign: int

    def is_unit(self) -> bool:
        return ModRing(self.m).is_unit(self.value)


def pairing_check(n: int, q: int, m: int) -> PairingReport:
    """Pair the two middle cycles built over the matched hyperbolic form.

    The supports must meet in exactly one subspace and the pairing value
    must be a unit; the sign depends on the canonical reference member, so
    the report carries it rather than forcing +1.
    """
    _require_modulus(q, m)
    eta = eta_recursive(n, q, m)
    form = pairing_form(n, q)
    psi_chain = psi(n, q, m, form=form)
    common = tuple(sorted(set(eta.coeffs) & set(psi_chain.coeffs)))
    if len(common) != 1:
        raise InternalCheckError(
            f"supports meet in {len(common)} spaces, expected exactly 1")
    value = bilinear(psi_chain, eta)
    fam = enumerate_mts(form)
    return PairingReport(n=n, q=q, m=m, value=value,
                         common_support=common,
                         reference_sign=fam.members[0][1])


@dataclass(frozen=True)
class NontrivialityVerdict:
    pairing: int
    nontrivial: bool
    coset_check_agrees: bool


def nontriviality_certificate(alpha: Cochain, beta: Chain) -> NontrivialityVerdict:
    """If alpha is a cocycle and <alpha, beta> != 0 then beta cannot be a
    boundary; the pairing value is the machine-checkable certificate.
    Cross-validated against rank-based coset membership."""
    from .homology import in_boundary_image

    ring = ModRing(alpha.m)
    if not coboundary(alpha, ring).is_zero():
        raise PreconditionError("certificate requires a cocycle on the left")
    value = bilinear(alpha, beta)
    nontrivial = value != 0
    member = in_boundary_image(beta, beta.m)
    if nontrivial and member:
        raise InternalCheckError(
            "pairing certifies nontriviality but the solver found a preimage")
    return NontrivialityVerdict(pairing=value, nontrivial=nontrivial,
                                coset_check_agrees=(not member) or not nontrivial)
