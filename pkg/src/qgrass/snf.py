"""Integer Smith normal form with transform tracking, desk scale.

Plain list-of-lists of Python ints; exactness over speed.  Used for the
composite-modulus homology path and for lattice membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError

MAX_SNF_DIM = 2000


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for t in range(inner):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(cols):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


@dataclass
class SNF:
    """U @ A @ V = D with U, V unimodular; diag holds the invariant factors."""

    diag: list[int]
    u: list[list[int]]
    v: list[list[int]]
    v_inv: list[list[int]]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith_normal_form(a: list[list[int]]) -> SNF:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if max(rows, cols, 1) > MAX_SNF_DIM:
        raise BudgetError(
            f"SNF input {rows}x{cols} exceeds the desk-scale cap {MAX_SNF_DIM}")
    m = [row[:] for row in a]
    u = _identity(rows)
    v = _identity(cols)
    v_inv = _identity(cols)

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def row_add(dst, src, c):
        # row dst += c * row src
        m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, c):
        # col dst += c * col src;  V tracks the same op, Vinv the inverse op
        for row in m:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]
        v_inv[src] = [x - c * y for x, y in zip(v_inv[src], v_inv[dst])]

    def row_scale(i, s):
        m[i] = [s * x for x in m[i]]
        u[i] = [s * x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # locate smallest nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(m[i][j])
                if x and (best is None or x < best):
                    best = x
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])

        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                qq = m[i][t] // m[t][t]
                row_add(i, t, -qq)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                qq = m[t][j] // m[t][t]
                col_add(j, t, -qq)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue  # a smaller remainder appeared; repick the pivot

        # pivot must divide the rest of the block for the invariant chain
        pivot = m[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        if pivot < 0:
            row_scale(t, -1)
        t += 1

    diag = [m[i][i] for i in range(min(rows, cols)) if m[i][i]]
    return SNF(diag=diag, u=u, v=v, v_inv=v_inv, shape=(rows, cols))


def solve_mod(a: list[list[int]], b: list[int], m: int) -> list[int] | None:
    """One solution x of A x = b (mod m), or None when unsolvable.

    Back-substitution through the Smith form: with U A V = D the system
    becomes D y = U b, y = V^{-1} x.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    s = smith_normal_form(a)
    ub = [sum(s.u[i][j] * b[j] for j in range(rows)) % m for i in range(rows)]
    y = [0] * cols
    from math import gcd

    for i in range(min(rows, cols)):
        d = s.diag[i] if i < len(s.diag) else 0
        rhs = ub[i]
        if d == 0:
            if rhs % m:
                return None
            continue
        g = gcd(d, m)
        if rhs % g:
            return None
        # d y = rhs (mod m): divide through by g
        dd, mm, rr = d // g, m // g, rhs // g
        y[i] = (rr * pow(dd, -1, mm)) % mm
    for i in range(min(rows, cols), rows):
        if ub[i] % m:
            return None
    x = [sum(s.v[i][j] * y[j] for j in range(cols)) % m for i in range(cols)]
    return x
