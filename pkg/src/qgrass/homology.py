"""Homology and cohomology of the complete q-complex over Z/m.

Prime moduli go through exact mod-p rank of the boundary matrices
(rank-nullity); composite moduli m | q+1 go through integer Smith normal
form: the level-t homology is the quotient of the kernel lattice
{x : Bd_t x = 0 mod m} by the image lattice Bd_{t+1} Z + m Z, both full-rank
sublattices of Z^{C_t}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from ._kernels import rank_modp
from .chains import Chain, ModRing, boundary, boundary_matrix
from .cones import OrderedBasis, cone
from .errors import PreconditionError
from .qarith import gaussian_binomial
from .snf import SNF, smith_normal_form, solve_mod


def _require_compatible(q: int, m: int) -> None:
    if (q + 1) % m != 0:
        raise PreconditionError(
            f"modulus must divide q+1 for the double boundary to vanish; "
            f"got q={q}, m={m}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass
class HomologyReport:
    n: int
    q: int
    m: int
    dim_c: list[int]
    rank_bd: list[int]          # rank of Bd_t, index t in 0..n (Bd_0 = 0)
    dim_z: list[int]
    dim_b: list[int]
    dim_h: list[int]
    divisors: list[list[int]] | None = None  # composite path, per level
    cohomology: bool = False

    def euler_characteristic(self) -> int:
        return sum((-1) ** t * c for t, c in enumerate(self.dim_c))

    def euler_from_homology(self) -> int:
        return sum((-1) ** t * h for t, h in enumerate(self.dim_h))

    def vanishing_pattern_ok(self) -> bool:
        """All levels trivial except the middle one when n is even."""
        for t, h in enumerate(self.dim_h):
            trivial = (h == 0) if self.divisors is None else not self.divisors[t]
            if self.n % 2 == 0 and t == self.n // 2:
                continue
            if not trivial:
                return False
        return True

    def verdict(self) -> str:
        return "vanishing-pattern: " + ("PASS" if self.vanishing_pattern_ok() else "FAIL")

    def elementary_divisors(self) -> list[list[int]] | None:
        """Prime-power split of the invariant factors, per level."""
        if self.divisors is None:
            return None
        out = []
        for level in self.divisors:
            parts = []
            for d in level:
                left = d
                f = 2
                while f * f <= left:
                    if left % f == 0:
                        pk = 1
                        while left % f == 0:
                            left //= f
                            pk *= f
                        parts.append(pk)
                    f += 1
                if left > 1:
                    parts.append(left)
            out.append(sorted(parts))
        return out

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "q": self.q,
            "mod": self.m,
            "cohomology": self.cohomology,
            "dim_c": self.dim_c,
            "rank_boundary": self.rank_bd,
            "dim_cycles": self.dim_z,
            "dim_boundaries": self.dim_b,
            "dim_homology": self.dim_h,
            "euler_characteristic": str(self.euler_characteristic()),
            "verdict": self.verdict(),
        }
        if self.divisors is not None:
            out["invariant_factors"] = self.divisors
            out["elementary_divisors"] = self.elementary_divisors()
        return out


def _dense_boundary(n: int, t: int, q: int) -> np.ndarray:
    if t < 1 or t > n:
        rows = gaussian_binomial(n, t - 1, q) if 0 <= t - 1 <= n else 0
        cols = gaussian_binomial(n, t, q) if 0 <= t <= n else 0
        return np.zeros((rows, cols), dtype=np.uint8)
    return boundary_matrix(n, t, q, 2).dense()


def homology_dims(n: int, q: int, p: int) -> HomologyReport:
    """Exact homology dimensions over the prime field F_p, p | q+1."""
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime; use homology_structure")
    _require_compatible(q, p)
    dim_c = [gaussian_binomial(n, t, q) for t in range(n + 1)]
    rank_bd = [0] * (n + 2)
    for t in range(1, n + 1):
        rank_bd[t] = rank_modp(_dense_boundary(n, t, q), p)
    dim_z = [dim_c[t] - rank_bd[t] for t in range(n + 1)]
    dim_b = [rank_bd[t + 1] for t in range(n + 1)]
    dim_h = [dim_z[t] - dim_b[t] for t in range(n + 1)]
    return HomologyReport(n=n, q=q, m=p, dim_c=dim_c, rank_bd=rank_bd[: n + 1],
                          dim_z=dim_z, dim_b=dim_b, dim_h=dim_h)


def cohomology_dims(n: int, q: int, p: int) -> HomologyReport:
    """Cohomology dimensions over F_p via the transposed boundary matrices."""
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    _require_compatible(q, p)
    dim_c = [gaussian_binomial(n, t, q) for t in range(n + 1)]
    rank_d = [0] * (n + 2)  # rank of the coboundary leaving level t
    for t in range(0, n):
        rank_d[t] = rank_modp(_dense_boundary(n, t + 1, q).T, p)
    dim_zc = [dim_c[t] - rank_d[t] for t in range(n + 1)]
    dim_bc = [rank_d[t - 1] if t >= 1 else 0 for t in range(n + 1)]
    dim_hc = [dim_zc[t] - dim_bc[t] for t in range(n + 1)]
    report = HomologyReport(n=n, q=q, m=p, dim_c=dim_c, rank_bd=rank_d[: n + 1],
                            dim_z=dim_zc, dim_b=dim_bc, dim_h=dim_hc,
                            cohomology=True)
    # duality cross-check: dim H^t must equal dim H_{n-t}
    hom = homology_dims(n, q, p)
    for t in range(n + 1):
        if report.dim_h[t] != hom.dim_h[n - t]:
            from .errors import InternalCheckError
            raise InternalCheckError(
                f"duality mismatch at level {t}: H^t={report.dim_h[t]} "
                f"vs H_{n-t}={hom.dim_h[n - t]}")
    return report


# ---------------------------------------------------------------------------
# Composite modulus: lattice quotient through integer SNF


def _kernel_lattice_basis(a: list[list[int]], cols: int, m: int):
    """Column basis (as a matrix) of {x in Z^cols : a x = 0 mod m}, plus the
    inverse basis matrix scaled so M = basis^{-1} g is integral for lattice
    members g.  Returns (basis, inv_rows, scale) with
    basis = V diag(t), basis^{-1} = diag(1/t) V^{-1}."""
    if not a:
        s = None
        tvec = [1] * cols
        v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
        v_inv = [row[:] for row in v]
    else:
        s = smith_normal_form(a)
        v, v_inv = s.v, s.v_inv
        tvec = []
        for i in range(cols):
            d = s.diag[i] if i < len(s.diag) else 0
            tvec.append(m // gcd(d, m) if d else 1)
    basis = [[v[i][j] * tvec[j] for j in range(cols)] for i in range(cols)]
    return basis, v_inv, tvec


def _quotient_invariants(a: list[list[int]], b_cols: list[list[int]],
                         dim: int, m: int) -> list[int]:
    """Invariant factors (those > 1) of ker(a mod m) / (im(b) + m Z^dim)."""
    basis, v_inv, tvec = _kernel_lattice_basis(a, dim, m)
    gens: list[list[int]] = [col[:] for col in b_cols]
    for i in range(dim):
        gens.append([m if j == i else 0 for j in range(dim)])
    # coordinates of each generator in the kernel basis: diag(1/t) Vinv g
    coord_cols = []
    for g in gens:
        w = [sum(v_inv[i][j] * g[j] for j in range(dim)) for i in range(dim)]
        for i in range(dim):
            if w[i] % tvec[i]:
                raise PreconditionError(
                    "image lattice is not inside the kernel lattice; "
                    "the modulus is incompatible with the boundary")
            w[i] //= tvec[i]
        coord_cols.append(w)
    mm = [[coord_cols[j][i] for j in range(len(coord_cols))] for i in range(dim)]
    s = smith_normal_form(mm)
    if s.rank < dim:
        from .errors import InternalCheckError
        raise InternalCheckError("image lattice unexpectedly not full rank")
    return [d for d in s.diag if d not in (1,)]


def homology_structure(n: int, q: int, m: int) -> HomologyReport:
    """Invariant factors of every H_t as a Z/m-module (m | q+1, m may be
    composite).  Each factor divides m."""
    _require_compatible(q, m)
    dim_c = [gaussian_binomial(n, t, q) for t in range(n + 1)]
    divisors: list[list[int]] = []
    for t in range(n + 1):
        a = _dense_boundary(n, t, q).astype(int).tolist()
        bmat = _dense_boundary(n, t + 1, q)
        b_cols = [list(map(int, bmat[:, j])) for j in range(bmat.shape[1])]
        divisors.append(_quotient_invariants(a, b_cols, dim_c[t], m))
    dim_h = [len(d) for d in divisors]  # factor count, not a vector-space dim
    return HomologyReport(n=n, q=q, m=m, dim_c=dim_c,
                          rank_bd=[0] * (n + 1), dim_z=[0] * (n + 1),
                          dim_b=[0] * (n + 1), dim_h=dim_h, divisors=divisors)


# ---------------------------------------------------------------------------
# Constructive tools


def fill_cycle(tau: Chain, b: OrderedBasis) -> Chain:
    """A chain c with boundary(c) = tau, for a cycle tau below the middle."""
    ring = ModRing(tau.m)
    _require_compatible(tau.q, tau.m)
    if 2 * tau.k >= tau.n:
        raise PreconditionError("constructive filling needs level < n/2")
    if not boundary(tau, ring).is_zero():
        raise PreconditionError("input is not a cycle")
    c = cone(b, tau, ring, variant="modular")
    if boundary(c, ring) != tau:
        from .errors import InternalCheckError
        raise InternalCheckError("cone failed to fill a cycle")
    return c


def in_boundary_image(beta: Chain, m: int) -> bool:
    """Coset membership: is beta a boundary of some (k+1)-chain mod m?"""
    n, k, q = beta.n, beta.k, beta.q
    if k >= n:
        return beta.is_zero()
    from .subspace import grassmannian_index

    a = _dense_boundary(n, k + 1, q).astype(int).tolist()
    idx = grassmannian_index(n, k, q)
    vec = [0] * gaussian_binomial(n, k, q)
    for u, c in beta.coeffs.items():
        vec[idx[u]] = c % m
    return solve_mod(a, vec, m) is not None


def spans_kernel(chains: list[Chain], n: int, k: int, q: int, m: int) -> bool:
    """Do the given k-chains generate ker(boundary mod m)?

    Prime m compares ranks; composite m compares the generated lattice with
    the kernel lattice through the Smith machinery.
    """
    from .subspace import grassmannian_index

    idx = grassmannian_index(n, k, q)
    dim = gaussian_binomial(n, k, q)
    cols = []
    for ch in chains:
        col = [0] * dim
        for u, c in ch.coeffs.items():
            col[idx[u]] = c % m
        cols.append(col)
    if _is_prime(m):
        fam = np.array(cols, dtype=np.int64).T if cols else np.zeros((dim, 0), dtype=np.int64)
        a = _dense_boundary(n, k, q)
        kernel_dim = dim - rank_modp(a, m)
        return rank_modp(fam, m) == kernel_dim
    a = _dense_boundary(n, k, q).astype(int).tolist()
    return _quotient_invariants(a, cols, dim, m) == []
