import random

import pytest

from qgrass.chains import Chain, ModRing, boundary
from qgrass.cones import OrderedBasis, cone_size_bound
from qgrass.errors import PreconditionError
from qgrass.homology import (
    cohomology_dims,
    fill_cycle,
    homology_dims,
    homology_structure,
    in_boundary_image,
    spans_kernel,
)
from qgrass.subspace import enumerate_grassmannian

RING3 = ModRing(3)


def test_odd_dimension_is_exact():
    assert homology_dims(5, 2, 3).dim_h == [0] * 6
    assert homology_dims(3, 2, 3).dim_h == [0] * 4
    assert homology_dims(3, 3, 2).dim_h == [0] * 4


def test_even_dimension_middle_only():
    r = homology_dims(4, 2, 3)
    assert r.dim_h == [0, 0, 7, 0, 0]
    assert r.euler_characteristic() == 1 - 15 + 35 - 15 + 1 == 7
    assert r.euler_from_homology() == r.euler_characteristic()
    r = homology_dims(4, 3, 2)
    assert r.dim_h == [0, 0, 52, 0, 0]
    assert r.euler_characteristic() == 1 - 40 + 130 - 40 + 1 == 52
    r = homology_dims(2, 2, 3)
    assert r.dim_h == [0, 1, 0]


def test_euler_identity_across_instances():
    for (n, q, p) in [(2, 2, 3), (3, 2, 3), (4, 2, 3), (5, 2, 3), (3, 3, 2), (4, 3, 2)]:
        r = homology_dims(n, q, p)
        assert r.euler_from_homology() == r.euler_characteristic()


def test_rejects_incompatible_prime():
    with pytest.raises(PreconditionError):
        homology_dims(4, 2, 2)
    with pytest.raises(PreconditionError):
        homology_dims(4, 2, 4)  # composite goes through homology_structure


def test_cohomology_duality():
    for n in (3, 4, 5):
        hom = homology_dims(n, 2, 3)
        coh = cohomology_dims(n, 2, 3)
        assert all(coh.dim_h[t] == hom.dim_h[n - t] for t in range(n + 1))


def test_composite_structure():
    assert homology_structure(3, 3, 4).divisors == [[], [], [], []]
    r = homology_structure(2, 3, 4)
    assert r.divisors == [[], [4, 4], []]
    assert homology_structure(0, 3, 4).divisors == [[4]]
    with pytest.raises(PreconditionError):
        homology_structure(3, 3, 3)  # 3 does not divide 4


def test_composite_reduces_to_prime_dims():
    # mod-2 dimension of the Z/4 structure must match the F_2 computation
    struct = homology_structure(2, 3, 4)
    dims2 = homology_dims(2, 3, 2)
    for t in range(3):
        assert sum(1 for d in struct.divisors[t] if d % 2 == 0) == dims2.dim_h[t]


def test_structure_agrees_with_dims_at_prime_modulus():
    struct = homology_structure(4, 2, 3)
    dims = homology_dims(4, 2, 3)
    assert [len(d) for d in struct.divisors] == dims.dim_h
    assert all(d == 3 for d in struct.divisors[2])


def test_composite_with_two_prime_factors():
    r = homology_structure(2, 5, 6)
    assert r.divisors == [[], [6, 6, 6, 6], []]
    assert r.elementary_divisors() == [[], [2, 2, 2, 2, 3, 3, 3, 3], []]


def brute_force_quotient_orders(n, q, m, t):
    """Independent oracle: enumerate ker(boundary mod m) at level t, quotient
    by the boundary image, and return the multiset of element orders."""
    from itertools import product

    from qgrass.chains import boundary_matrix
    from qgrass.qarith import gaussian_binomial

    dim = gaussian_binomial(n, t, q)
    a = boundary_matrix(n, t, q, m).dense().astype(int) if t >= 1 else None
    bmat = boundary_matrix(n, t + 1, q, m).dense().astype(int) if t < n else None
    kernel = []
    for x in product(range(m), repeat=dim):
        if a is None or all(v % m == 0 for v in a @ x):
            kernel.append(x)
    image = set()
    up = gaussian_binomial(n, t + 1, q) if t < n else 0
    for y in product(range(m), repeat=up):
        image.add(tuple(int(v) % m for v in bmat @ y) if bmat is not None
                  else (0,) * dim)
    # cosets of the image inside the kernel
    seen = set()
    orders = []
    for x in kernel:
        coset = frozenset(tuple((xi + vi) % m for xi, vi in zip(x, v))
                          for v in image)
        if coset in seen:
            continue
        seen.add(coset)
        k = 1
        while tuple(k * xi % m for xi in x) not in image:
            k += 1  # terminates: m*x = 0 and the zero vector is in the image
        orders.append(k)
    return sorted(orders)


def test_structure_matches_brute_force_group():
    # (2,2,3): middle homology is one copy of Z/3
    assert homology_structure(2, 2, 3).divisors[1] == [3]
    got = brute_force_quotient_orders(2, 2, 3, 1)
    assert got == [1, 3, 3]  # identity plus two generators of order 3
    # (2,3,4): (Z/4)^2 has order statistics 1x1, 3x2, 12x4
    struct = homology_structure(2, 3, 4).divisors[1]
    assert struct == [4, 4]
    orders = brute_force_quotient_orders(2, 3, 4, 1)
    assert sorted(orders) == [1] + [2] * 3 + [4] * 12


def test_fill_cycle_roundtrip():
    b = OrderedBasis.standard(5, 2)
    grass2 = enumerate_grassmannian(5, 2, 2)
    tau = boundary(Chain.generator(grass2[3], 3), RING3)
    c = fill_cycle(tau, b)
    assert boundary(c, RING3) == tau
    z = Chain.zero(5, 1, 3, 2)
    assert fill_cycle(z, b).is_zero()


def test_fill_cycle_sizes_bounded():
    rng = random.Random(77)
    b = OrderedBasis.standard(5, 2)
    grass2 = enumerate_grassmannian(5, 2, 2)
    bound = cone_size_bound(1, 2)
    for _ in range(100):
        x = Chain.build(5, 2, 3, 2,
                        [(u, rng.randrange(1, 3)) for u in rng.sample(grass2, 3)])
        tau = boundary(x, RING3)
        c = fill_cycle(tau, b)
        assert boundary(c, RING3) == tau
        assert c.support_size() <= bound * tau.support_size()


def test_fill_cycle_rejections():
    b = OrderedBasis.standard(5, 2)
    not_cycle = Chain.generator(enumerate_grassmannian(5, 1, 2)[0], 3)
    with pytest.raises(PreconditionError):
        fill_cycle(not_cycle, b)
    middle = Chain.zero(4, 2, 3, 2)
    with pytest.raises(PreconditionError):
        fill_cycle(middle, OrderedBasis.standard(4, 2))


def test_in_boundary_image():
    beta = boundary(Chain.generator(enumerate_grassmannian(4, 2, 2)[0], 3), RING3)
    assert in_boundary_image(beta, 3)
    # a singleton 1-chain is not a boundary at (4,2,3): boundaries hit
    # every line of a plane together
    single = Chain.generator(enumerate_grassmannian(4, 1, 2)[0], 3)
    assert not in_boundary_image(single, 3)


def test_spans_kernel_negative():
    # the boundaries of planes span only part of ker at the middle of (4,2)
    ring = RING3
    planes = enumerate_grassmannian(4, 2, 2)
    cycles = [boundary(Chain.generator(u, 3), ring) for u in planes[:4]]
    assert not spans_kernel(cycles, 4, 1, 2, 3)
