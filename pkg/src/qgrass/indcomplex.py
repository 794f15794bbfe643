"""The simplicial independence complex of the complete q-complex.

Vertices are the lines of F_q^n; a face is a set of lines whose joint span
has dimension equal to the set size.  Face counts follow the product
formula prod_i (q^n - q^i) / (q-1)^k, which counts ordered independent
tuples; faces themselves are stored as sets, so the stored count at level k
is the formula value divided by k!.  Both numbers are exposed.

Chains here are over F_2 (the overlap machinery works mod 2), represented
as frozensets of faces, each face a frozenset of line indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import PreconditionError
from .qarith import independent_tuple_count
from .subspace import Subspace, enumerate_grassmannian, rref, span_of

Face = frozenset  # of line indices


@dataclass
class IndependenceComplex:
    n: int
    q: int
    k_max: int
    lines: tuple[Subspace, ...]
    faces: list[list[Face]]  # faces[k] = faces with k lines; faces[0] = [empty]

    def face_count_formula(self, k: int) -> int:
        """The ordered-tuple count prod (q^n - q^i)/(q-1)^k."""
        return independent_tuple_count(self.n, k, self.q)

    def face_count_sets(self, k: int) -> int:
        return len(self.faces[k])

    def span_of_face(self, face: Face) -> Subspace:
        vecs = [r for i in face for r in self.lines[i].rows]
        return span_of(vecs, self.n, self.q)


def independence_complex(n: int, k_max: int, q: int) -> IndependenceComplex:
    lines = enumerate_grassmannian(n, 1, q)
    if k_max > n:
        raise PreconditionError("faces cannot have more lines than the dimension")
    faces: list[list[Face]] = [[Face()]]
    # grow faces level by level; a set of lines is a face iff the lines are
    # independent (the complete complex contains every join)
    prev: list[tuple[Face, Subspace]] = [(Face(), rref([], n, q))]
    for k in range(1, k_max + 1):
        cur: list[tuple[Face, Subspace]] = []
        for face, span in prev:
            start = max(face) + 1 if face else 0
            for i in range(start, len(lines)):
                if span.contains_vector(lines[i].rows[0]):
                    continue
                bigger = rref(span.rows + lines[i].rows, n, q)
                cur.append((face | {i}, bigger))
        faces.append([f for f, _ in cur])
        prev = cur
    ic = IndependenceComplex(n=n, q=q, k_max=k_max, lines=lines, faces=faces)
    for k in range(k_max + 1):
        expect = ic.face_count_formula(k) // factorial(k)
        if len(faces[k]) != expect:
            from .errors import InternalCheckError
            raise InternalCheckError(
                f"level {k} has {len(faces[k])} faces, expected {expect}")
    return ic


# ---------------------------------------------------------------------------
# F_2 chains on the independence complex


def face_boundary(face: Face) -> frozenset[Face]:
    """Mod-2 simplicial boundary: all facets, and the empty face below a
    vertex (the complex is graded down to rank 0)."""
    if not face:
        return frozenset()
    return frozenset(face - {i} for i in face)


def chain_boundary(chain: frozenset[Face]) -> frozenset[Face]:
    acc: set[Face] = set()
    for f in chain:
        acc ^= face_boundary(f)
    return frozenset(acc)


def simplicial_cone_sizes_bound(k: int) -> int:
    """f(k) from f(i) = 1 + i f(i-1), f(0) = 1."""
    f = 1
    for i in range(1, k + 1):
        f = 1 + i * f
    return f


class SimplicialConeCache:
    """The vertex-cone recursion on the independence complex over F_2.

    The coning vertex for a face is the first basis line outside the span
    of the face and of every line seen in the cone of its boundary; that
    choice keeps every augmented set independent, so the cone is a genuine
    chain of (k+1)-faces.
    """

    def __init__(self, complex_: IndependenceComplex, basis_lines: list[int]):
        self.ic = complex_
        self.basis_lines = basis_lines
        self._memo: dict[Face, frozenset[Face]] = {}

    def of_face(self, face: Face) -> frozenset[Face]:
        hit = self._memo.get(face)
        if hit is not None:
            return hit
        ic = self.ic
        if not face:
            out = frozenset({Face({self.basis_lines[0]})})
        else:
            below = self.of_chain(face_boundary(face))
            involved = set(face)
            for f in below:
                involved |= f
            span = ic.span_of_face(Face(involved))
            pick = None
            for i in self.basis_lines:
                if not span.contains_vector(ic.lines[i].rows[0]):
                    pick = i
                    break
            if pick is None:
                raise PreconditionError(
                    f"no admissible cone vertex for a face of {len(face)} lines "
                    f"in dimension {ic.n}; need level < n/2")
            target = set(face_symmetric_difference({face}, below))
            out = frozenset(f | {pick} for f in target)
        self._memo[face] = out
        return out

    def of_chain(self, chain: frozenset[Face]) -> frozenset[Face]:
        acc: set[Face] = set()
        for f in chain:
            acc ^= self.of_face(f)
        return frozenset(acc)


def face_symmetric_difference(a: frozenset[Face] | set[Face],
                              b: frozenset[Face] | set[Face]) -> frozenset[Face]:
    return frozenset(set(a) ^ set(b))


def simplicial_cone(ic: IndependenceComplex, chain: frozenset[Face],
                    basis_lines: list[int] | None = None) -> frozenset[Face]:
    """Cone of an F_2 chain of k-faces, defined for k < n/2."""
    if basis_lines is None:
        basis_lines = standard_basis_lines(ic)
    cache = SimplicialConeCache(ic, basis_lines)
    return cache.of_chain(chain)


def standard_basis_lines(ic: IndependenceComplex) -> list[int]:
    from .subspace import standard_vector

    idx = {u: i for i, u in enumerate(ic.lines)}
    out = []
    for i in range(ic.n):
        line = rref([standard_vector(i, ic.n)], ic.n, ic.q)
        out.append(idx[line])
    return out


def verify_cone_identity(ic: IndependenceComplex, face: Face,
                         basis_lines: list[int] | None = None) -> bool:
    """boundary(cone(face)) == face + cone(boundary(face)) over F_2."""
    if basis_lines is None:
        basis_lines = standard_basis_lines(ic)
    cache = SimplicialConeCache(ic, basis_lines)
    lhs = chain_boundary(cache.of_face(face))
    rhs = face_symmetric_difference({face}, cache.of_chain(face_boundary(face)))
    return lhs == rhs


@dataclass
class SparsityReport:
    n: int
    k: int
    q: int
    max_intersecting: int
    bound: int
    denominator: int  # the ordered-count |G_n(k)|

    @property
    def fraction(self):
        from fractions import Fraction

        return Fraction(self.max_intersecting, self.denominator)

    @property
    def ok(self) -> bool:
        return self.max_intersecting <= self.bound


def local_sparsity(n: int, k: int, q: int) -> SparsityReport:
    """Worst-case number of k-faces meeting a fixed k-face, against the
    union bound k |G_n(1)|^(k-1); the fraction uses the product-formula
    denominator."""
    ic = independence_complex(n, k, q)
    level = ic.faces[k]
    bound = k * ic.face_count_formula(1) ** (k - 1)
    worst = 0
    for sigma in level:
        hits = sum(1 for tau in level if tau & sigma)
        worst = max(worst, hits)
    return SparsityReport(n=n, k=k, q=q, max_intersecting=worst, bound=bound,
                          denominator=ic.face_count_formula(k))
