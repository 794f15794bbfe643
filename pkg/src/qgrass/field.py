"""Finite field arithmetic F_q for prime powers q, via full lookup tables.

Elements are integer indices 0..q-1.  For prime q the index is the residue
itself.  For q = p^e the index encodes a polynomial over F_p in base-p
digits (index = sum c_i p^i represents sum c_i x^i), reduced modulo a fixed
irreducible polynomial.  The polynomial for each (p, e) comes from a small
published table (Conway polynomials for the sizes used here, listed in the
README); outside the table a deterministic minimal-index search is used, so
runs are reproducible either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError

# Conway polynomials, encoded as coefficient tuples (c_0, c_1, ..., c_e)
# for c_0 + c_1 x + ... + c_e x^e.  Keyed by (p, e).
_IRREDUCIBLE_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),    # x^4 + x + 1
    (3, 2): (2, 2, 1),          # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),       # x^3 + 2x + 1
    (5, 2): (2, 4, 1),          # x^2 + 4x + 2
    (7, 2): (3, 6, 1),          # x^2 + 6x + 3
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise if q is not a prime power."""
    if q < 2:
        raise PreconditionError(f"q must be at least 2, got {q}")
    for p in range(2, q + 1):
        if p * p > q and p < q:
            p = q  # q itself is prime
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise PreconditionError(f"{q} is not a prime power")
            return p, e
    raise PreconditionError(f"{q} is not a prime power")


def _poly_mul_mod(a: int, b: int, modulus: tuple[int, ...], p: int) -> int:
    """Multiply two base-p-encoded polynomials modulo the given irreducible."""
    e = len(modulus) - 1
    # expand to coefficient lists
    da = []
    while a:
        da.append(a % p)
        a //= p
    db = []
    while b:
        db.append(b % p)
        b //= p
    res = [0] * (len(da) + len(db))
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                res[i + j] = (res[i + j] + ca * cb) % p
    # reduce by modulus (monic of degree e)
    for deg in range(len(res) - 1, e - 1, -1):
        c = res[deg]
        if c:
            res[deg] = 0
            for i in range(e):
                res[deg - e + i] = (res[deg - e + i] - c * modulus[i]) % p
    out = 0
    for i in range(min(len(res), e), 0, -1):
        out = out * p + res[i - 1]
    return out


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= e/2 over F_p.

    Quadratic in p^(e/2), which is fine for the tiny fields this package
    enumerates over.
    """
    e = len(coeffs) - 1

    def poly_mod(num: list[int], den: list[int]) -> list[int]:
        num = num[:]
        dd = len(den) - 1
        inv = pow(den[-1], -1, p)
        for i in range(len(num) - 1, dd - 1, -1):
            c = (num[i] * inv) % p
            if c:
                for j in range(dd + 1):
                    num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        return num

    def monic_polys(deg: int):
        for idx in range(p**deg):
            c = []
            m = idx
            for _ in range(deg):
                c.append(m % p)
                m //= p
            yield c + [1]

    target = list(coeffs)
    for d in range(1, e // 2 + 1):
        for cand in monic_polys(d):
            r = poly_mod(target, cand)
            if r == [0]:
                return False
    return True


def _find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Deterministic fallback: smallest monic irreducible of degree e over
    F_p in base-p index order of the low coefficients."""
    for idx in range(p**e):
        c = []
        m = idx
        for _ in range(e):
            c.append(m % p)
            m //= p
        cand = tuple(c) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError("unreachable: irreducibles exist for every degree")


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic tables for F_q.  Immutable; safe to share across threads."""

    q: int
    p: int
    e: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int, ...]  # inv[0] = 0 placeholder, never a valid inverse
    modulus: tuple[int, ...] | None

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def __repr__(self) -> str:  # q determines everything
        return f"FieldSpec(q={self.q})"


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build (and cache) the arithmetic tables for F_q.

    Raises PreconditionError when q is not a prime power.
    """
    p, e = _factor_prime_power(q)
    if e == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        modulus = None
    else:
        modulus = _IRREDUCIBLE_TABLE.get((p, e)) or _find_irreducible(p, e)
        add = tuple(
            tuple(_digit_add(a, b, p, e) for b in range(q)) for a in range(q)
        )
        mul = tuple(
            tuple(_poly_mul_mod(a, b, modulus, p) for b in range(q))
            for a in range(q)
        )
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = tuple(
        next((b for b in range(q) if mul[a][b] == 1), 0) for a in range(q)
    )
    return FieldSpec(q=q, p=p, e=e, add=add, mul=mul, neg=neg, inv=inv,
                     modulus=modulus)


def _digit_add(a: int, b: int, p: int, e: int) -> int:
    out = 0
    mult = 1
    for _ in range(e):
        out += ((a % p + b % p) % p) * mult
        a //= p
        b //= p
        mult *= p
    return out


def check_field_axioms(f: FieldSpec) -> None:
    """Exhaustively verify the field axioms on the tables (q <= 16 intended).

    Raises InternalCheckError on any violation.
    """
    from .errors import InternalCheckError

    q = f.q
    rng = range(q)
    for a in rng:
        if f.add[a][0] != a or f.mul[a][1] != a:
            raise InternalCheckError(f"identity axiom fails at {a}")
        if a and f.mul[a][f.inv[a]] != 1:
            raise InternalCheckError(f"inverse axiom fails at {a}")
        for b in rng:
            if f.add[a][b] != f.add[b][a] or f.mul[a][b] != f.mul[b][a]:
                raise InternalCheckError("commutativity fails")
            for c in rng:
                if f.add[f.add[a][b]][c] != f.add[a][f.add[b][c]]:
                    raise InternalCheckError("additive associativity fails")
                if f.mul[f.mul[a][b]][c] != f.mul[a][f.mul[b][c]]:
                    raise InternalCheckError("multiplicative associativity fails")
                if f.mul[a][f.add[b][c]] != f.add[f.mul[a][b]][f.mul[a][c]]:
                    raise InternalCheckError("distributivity fails")
