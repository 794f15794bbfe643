import math

import numpy as np
import pytest

from qgrass.errors import PreconditionError
from qgrass.qarith import gaussian_binomial, q_int
from qgrass.randmodel import (
    ConnectivityTester,
    derive_seed,
    face_uniforms,
    is_k_connected,
    sample,
    splitmix64,
    threshold_estimate,
    threshold_sweep,
    uncovered_faces,
    wilson_interval,
)


def test_edge_probabilities():
    assert sample(4, 1, 2, 0.0, 1).included == ()
    assert len(sample(4, 1, 2, 1.0, 1).included) == gaussian_binomial(4, 2, 2)


def test_determinism_and_seed_sensitivity():
    a = sample(4, 1, 2, 0.5, 42)
    b = sample(4, 1, 2, 0.5, 42)
    c = sample(4, 1, 2, 0.5, 43)
    assert a.included == b.included
    assert a.included != c.included


def test_coupling_is_nested():
    for seed in range(20):
        lo = sample(4, 1, 2, 0.2, seed)
        hi = sample(4, 1, 2, 0.7, seed)
        assert set(lo.included) <= set(hi.included)


def test_uniforms_are_reasonable():
    u = face_uniforms(123, 10000)
    assert (0 <= u).all() and (u < 1).all()
    assert abs(u.mean() - 0.5) < 0.02
    # keyed per index: prefixes agree
    assert (face_uniforms(123, 100) == u[:100]).all()


def test_splitmix_is_pure():
    x = np.array([1, 2, 3], dtype=np.uint64)
    assert (splitmix64(x) == splitmix64(x.copy())).all()


def test_connectivity_extremes():
    full = sample(4, 1, 2, 1.0, 0)
    empty = sample(4, 1, 2, 0.0, 0)
    assert is_k_connected(full, 3)
    assert not is_k_connected(empty, 3)


def test_connectivity_rejections():
    x = sample(4, 1, 2, 0.5, 0)
    with pytest.raises(PreconditionError):
        is_k_connected(x, 4)  # not prime
    with pytest.raises(PreconditionError):
        is_k_connected(x, 2)  # does not divide q+1


def test_uncovered_faces():
    assert uncovered_faces(sample(4, 1, 2, 1.0, 0)) == []
    assert len(uncovered_faces(sample(4, 1, 2, 0.0, 0))) == q_int(4, 2) * 0 + 15


def test_uncovered_implies_disconnected():
    tester = ConnectivityTester(4, 1, 2, 3)
    for trial in range(300):
        x = sample(4, 1, 2, 0.35, derive_seed(5, trial))
        if tester.uncovered(x):
            assert not tester.is_connected(x)


def brute_force_connected(x, p_coef):
    """Independent oracle: enumerate every k-cochain mod p and check that
    each cocycle of the sampled complex is a coboundary."""
    from itertools import product

    import numpy as np

    from qgrass.chains import boundary_matrix

    inc = boundary_matrix(x.n, x.k + 1, x.q, p_coef).dense().T.astype(int)
    rows = inc[list(x.included)] if x.included else inc[:0]
    below = boundary_matrix(x.n, x.k, x.q, p_coef).dense().T.astype(int) \
        if x.k >= 1 else None
    dim = inc.shape[1]
    coboundaries = set()
    n_below = below.shape[1] if below is not None else 0
    for y in product(range(p_coef), repeat=n_below):
        coboundaries.add(tuple((below @ y) % p_coef) if below is not None
                         else (0,) * dim)
    for a in product(range(p_coef), repeat=dim):
        if rows.size and any(v % p_coef for v in rows @ a):
            continue  # not a cocycle of X
        if tuple(a) not in coboundaries:
            return False
    return True


def test_connectivity_matches_brute_force():
    tester = ConnectivityTester(3, 1, 2, 3)
    agree = 0
    for trial in range(40):
        x = sample(3, 1, 2, 0.3 + 0.01 * trial, derive_seed(21, trial))
        assert tester.is_connected(x) == brute_force_connected(x, 3)
        agree += 1
    assert agree == 40


def test_uncovered_count_matches_expectation():
    # E[#uncovered] = (n choose k)_q (1-p)^{[n-k]_q}
    p = 0.15
    trials = 400
    tester = ConnectivityTester(4, 1, 2, 3)
    total = sum(len(tester.uncovered(sample(4, 1, 2, p, derive_seed(11, t))))
                for t in range(trials))
    expect = 15 * (1 - p) ** 7
    assert abs(total / trials - expect) < 0.35


def test_threshold_estimate():
    assert math.isclose(threshold_estimate(4, 1, 2), math.log(15) / 7,
                        rel_tol=1e-12)


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 0) == (0.0, 1.0)
    lo, hi = wilson_interval(100, 100)
    assert hi > 0.999 and lo > 0.9


def test_sweep_shape_and_monotone_statistics():
    sw = threshold_sweep(4, 1, 2, [0.1, 0.5, 0.9], trials=100, seed=7, p_coef=3)
    assert [r.p for r in sw.rows] == [0.1, 0.5, 0.9]
    assert all(0 <= r.connected <= r.trials for r in sw.rows)
    assert sw.rows[0].phat < sw.rows[2].phat
    csv = sw.to_csv()
    lines = csv.splitlines()
    assert lines[0].startswith("# pstar=")
    assert lines[1] == "p,trials,connected,phat,ci_lo,ci_hi"
    assert len(lines) == 5


def test_sweep_reproducible():
    a = threshold_sweep(4, 1, 2, [0.3, 0.6], trials=50, seed=9, p_coef=3)
    b = threshold_sweep(4, 1, 2, [0.3, 0.6], trials=50, seed=9, p_coef=3)
    assert a.to_csv() == b.to_csv()


def test_sample_rejects_bad_p():
    with pytest.raises(PreconditionError):
        sample(4, 1, 2, 1.5, 0)
    with pytest.raises(PreconditionError):
        sample(2, 2, 2, 0.5, 0)
