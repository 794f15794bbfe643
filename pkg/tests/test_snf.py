import random

import pytest

from qgrass.errors import BudgetError
from qgrass.snf import _identity, _matmul, smith_normal_form, solve_mod


def reconstruct_check(a):
    rows, cols = len(a), len(a[0]) if a else 0
    s = smith_normal_form(a)
    d = _matmul(_matmul(s.u, a), s.v)
    for i in range(rows):
        for j in range(cols):
            want = s.diag[i] if (i == j and i < len(s.diag)) else 0
            assert d[i][j] == want
    assert _matmul(s.v, s.v_inv) == _identity(cols)
    for i in range(len(s.diag) - 1):
        assert s.diag[i + 1] % s.diag[i] == 0
    assert all(x > 0 for x in s.diag)
    return s


def test_known_example():
    s = reconstruct_check([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert s.diag == [2, 2, 156]


def test_random_matrices():
    rng = random.Random(8)
    for _ in range(150):
        rows, cols = rng.randrange(0, 6), rng.randrange(1, 6)
        a = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        reconstruct_check(a)


def test_solve_mod_roundtrip():
    rng = random.Random(9)
    for _ in range(200):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
        m = rng.choice([2, 3, 4, 5, 6, 9])
        a = [[rng.randrange(m) for _ in range(cols)] for _ in range(rows)]
        x0 = [rng.randrange(m) for _ in range(cols)]
        b = [sum(r * x for r, x in zip(row, x0)) % m for row in a]
        x = solve_mod(a, b, m)
        assert x is not None
        assert [sum(r * v for r, v in zip(row, x)) % m for row in a] == b


def test_solve_mod_unsolvable():
    assert solve_mod([[2]], [1], 4) is None  # 2x = 1 mod 4 has no solution
    assert solve_mod([[0]], [1], 3) is None


def test_size_cap():
    with pytest.raises(BudgetError):
        smith_normal_form([[0] * 2001])
