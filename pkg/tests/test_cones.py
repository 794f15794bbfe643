import random
from fractions import Fraction

import pytest

from qgrass.chains import Chain, ModRing, boundary, coboundary
from qgrass.cones import (
    ConeCache,
    OrderedBasis,
    cone,
    cone_identity_defect,
    cone_size_bound,
    contraction,
    small_generators,
    w_extension,
)
from qgrass.errors import PreconditionError
from qgrass.qarith import cone_bound_closed_form
from qgrass.subspace import (
    contains,
    enumerate_grassmannian,
    rref,
    span_of,
    standard_vector,
    zero_space,
)

RING3 = ModRing(3)
B5 = OrderedBasis.standard(5, 2)


def rand_chain(rng, n, k, q, m, size=4):
    faces = enumerate_grassmannian(n, k, q)
    supp = rng.sample(faces, min(size, len(faces)))
    return Chain.build(n, k, m, q, [(u, rng.randrange(1, m)) for u in supp])


def test_basis_requires_independence():
    with pytest.raises(PreconditionError):
        OrderedBasis(3, 2, ((1, 0, 0), (1, 0, 0)))


def test_partial_basis_allowed():
    b = OrderedBasis(4, 2, ((1, 0, 0, 0),))
    assert len(b.vectors) == 1


def test_w_extension_dimension_and_tiebreak():
    w = zero_space(5, 2)
    assert w_extension(w, B5) == rref([standard_vector(0, 5)], 5, 2)
    line = rref([(0, 0, 0, 0, 1)], 5, 2)
    ext = w_extension(line, B5)
    assert ext.dim == 3
    # first two basis vectors are consumed, deterministically
    assert contains(ext, rref([standard_vector(0, 5)], 5, 2))
    assert contains(ext, rref([standard_vector(1, 5)], 5, 2))


def test_w_extension_monotone_on_nested_pairs():
    rng = random.Random(9)
    grass2 = enumerate_grassmannian(5, 2, 2)
    for _ in range(500):
        w = rng.choice(grass2)
        from qgrass.subspace import codim1_subspaces

        wp = rng.choice(codim1_subspaces(w))
        assert contains(w_extension(w, B5), w_extension(wp, B5))


def test_w_extension_rejects_high_level():
    w = enumerate_grassmannian(5, 3, 2)[0]
    with pytest.raises(PreconditionError):
        w_extension(w, B5)


def test_cone_of_bold_zero():
    z = Chain.generator(zero_space(5, 2), 3)
    c = cone(B5, z, RING3)
    assert c == Chain.generator(rref([standard_vector(0, 5)], 5, 2), 3)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_cone_identity_modular(k):
    rng = random.Random(100 + k)
    for _ in range(40):
        x = rand_chain(rng, 5, k, 2, 3)
        assert cone_identity_defect(B5, x, RING3).is_zero()


def test_cone_identity_general_level_one_any_modulus():
    rng = random.Random(4)
    ring5 = ModRing(5)
    for _ in range(40):
        x = rand_chain(rng, 5, 1, 2, 5)
        assert cone_identity_defect(B5, x, ring5, variant="general").is_zero()


def test_cone_identity_general_all_levels_when_modulus_divides():
    rng = random.Random(6)
    for k in (0, 1, 2):
        for _ in range(20):
            x = rand_chain(rng, 5, k, 2, 3)
            assert cone_identity_defect(B5, x, RING3, variant="general").is_zero()


def test_general_variant_rejected_at_deep_levels_with_bad_modulus():
    x = Chain.generator(enumerate_grassmannian(5, 2, 2)[0], 5)
    with pytest.raises(PreconditionError):
        cone(B5, x, ModRing(5), variant="general")


def test_variant_ring_conditions():
    x = Chain.generator(enumerate_grassmannian(5, 1, 2)[0], 4)
    with pytest.raises(PreconditionError):
        cone(B5, x, ModRing(4), variant="modular")  # 4 does not divide 3
    y = Chain.generator(enumerate_grassmannian(5, 1, 2)[0], 2)
    with pytest.raises(PreconditionError):
        cone(B5, y, ModRing(2), variant="general")  # gcd(2,2) > 1


def test_cone_rejects_levels_past_middle():
    x = Chain.generator(enumerate_grassmannian(5, 3, 2)[0], 3)
    with pytest.raises(PreconditionError):
        cone(B5, x, RING3)


def test_cone_linearity():
    rng = random.Random(12)
    for _ in range(20):
        x = rand_chain(rng, 5, 1, 2, 3)
        y = rand_chain(rng, 5, 1, 2, 3)
        r = rng.randrange(1, 3)
        assert cone(B5, x.add(y), RING3) == cone(B5, x, RING3).add(cone(B5, y, RING3))
        assert cone(B5, x.scale(r), RING3) == cone(B5, x, RING3).scale(r)


def test_cone_locality():
    for u in enumerate_grassmannian(5, 2, 2)[:40]:
        c = cone(B5, Chain.generator(u, 3), RING3)
        arena = w_extension(u, B5)
        assert all(contains(arena, w) for w in c.coeffs)


def test_cone_depends_only_on_prefix():
    alt = OrderedBasis(5, 2, B5.vectors[:3] + ((0, 1, 1, 0, 1), (0, 0, 1, 1, 1)))
    for u in enumerate_grassmannian(5, 1, 2)[:15]:
        g = Chain.generator(u, 3)
        assert cone(B5, g, RING3) == cone(alt, g, RING3)


def test_two_cone_difference_of_cycle_is_cycle():
    rng = random.Random(14)
    other = OrderedBasis(5, 2, tuple(
        tuple(rng.randrange(2) for _ in range(5)) for _ in range(5)))
    if span_of(other.vectors, 5, 2).dim != 5:
        other = OrderedBasis.standard(5, 2)
    for _ in range(10):
        x = rand_chain(rng, 5, 2, 2, 3)
        tau = boundary(x, RING3)  # a cycle at level 1
        diff = cone(B5, tau, RING3).sub(cone(other, tau, RING3))
        assert boundary(diff, RING3).is_zero()


def test_cone_size_bound_recursion():
    assert cone_size_bound(0, 2) == 1
    assert cone_size_bound(1, 2) == 6
    assert cone_size_bound(2, 2) == 133
    assert cone_size_bound(1, 3) == 8
    for k in range(4):
        for q in (2, 3):
            assert Fraction(cone_size_bound(k, q)) == cone_bound_closed_form(k, q)


def test_measured_sizes_within_bound():
    rng = random.Random(15)
    bases = [B5]
    while len(bases) < 5:
        vecs = tuple(tuple(rng.randrange(2) for _ in range(5)) for _ in range(5))
        if span_of(vecs, 5, 2).dim == 5:
            bases.append(OrderedBasis(5, 2, vecs))
    for b in bases:
        for u in enumerate_grassmannian(5, 2, 2):
            c = cone(b, Chain.generator(u, 3), RING3)
            assert c.support_size() <= cone_size_bound(2, 2)


def test_contraction_identity():
    rng = random.Random(16)
    for _ in range(100):
        a = rand_chain(rng, 5, 1, 2, 3, size=3)
        lhs = contraction(B5, coboundary(a, RING3), RING3).add(
            coboundary(contraction(B5, a, RING3), RING3))
        assert lhs == a


def test_contraction_of_zero_and_pointwise_value():
    z = Chain.zero(5, 1, 3, 2)
    assert contraction(B5, z, RING3).is_zero()
    cache = ConeCache(B5, RING3)
    u = enumerate_grassmannian(5, 1, 2)[4]
    a = Chain.generator(u, 3)
    got = contraction(B5, a, RING3)
    w = zero_space(5, 2)
    assert got.coeff(w) == cache.of_subspace(w).coeff(u)


def test_small_generators_certified():
    gens = small_generators(5, 1, 2, 5)
    assert len(gens) == len(enumerate_grassmannian(5, 1, 2))
    assert all(g.support_span.dim <= 2 for g in gens)
    gens = small_generators(5, 2, 2, 3)
    assert all(g.support_span.dim <= 4 for g in gens)
    assert all(boundary(g.chain, RING3).is_zero() for g in gens)


def test_small_generators_composite_modulus():
    from qgrass.homology import spans_kernel

    gens = small_generators(5, 1, 3, 4)  # q=3 invertible mod 4, level 1
    assert all(g.support_span.dim <= 2 for g in gens)
    assert spans_kernel([g.chain for g in gens], 5, 1, 3, 4)


def test_small_generators_rejections():
    with pytest.raises(PreconditionError):
        small_generators(4, 2, 2, 3)  # k >= n/2
    with pytest.raises(PreconditionError):
        small_generators(5, 1, 2, 4)  # q not invertible mod 4... gcd(2,4)=2
    with pytest.raises(PreconditionError):
        small_generators(5, 2, 2, 5)  # deep level without m | q+1
