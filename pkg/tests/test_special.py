import random

import pytest

from qgrass.chains import Chain, ModRing, bilinear, boundary, coboundary
from qgrass.errors import PreconditionError
from qgrass.field import make_field
from qgrass.qarith import mts_count
from qgrass.special import (
    QuadraticForm,
    enumerate_mts,
    eta_explicit,
    eta_recursive,
    hyperbolic_form,
    is_totally_singular,
    nontriviality_certificate,
    pairing_check,
    pairing_form,
    psi,
)
from qgrass.subspace import (
    enumerate_grassmannian,
    intersect,
    rref,
    standard_vector,
    zero_space,
)


def test_hyperbolic_form_values():
    form = hyperbolic_form(2, 2)
    e = [standard_vector(i, 4) for i in range(4)]
    assert form.evaluate(e[0]) == 0
    f = make_field(2)
    e12 = tuple(f.add[a][b] for a, b in zip(e[0], e[1]))
    assert form.evaluate(e12) == 1
    assert form.polarization(e[0], e[1]) == 1
    assert form.polarization(e[0], e[2]) == 0


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)])
def test_hyperbolic_gram_full_rank(n, q):
    assert hyperbolic_form(n, q).is_nondegenerate()


def test_quadratic_scaling_and_bilinearity():
    rng = random.Random(40)
    for q in (2, 3, 4):
        form = hyperbolic_form(2, q)
        f = make_field(q)
        for _ in range(40):
            v = tuple(rng.randrange(q) for _ in range(4))
            a = rng.randrange(q)
            av = tuple(f.mul[a][x] for x in v)
            assert form.evaluate(av) == f.mul[f.mul[a][a]][form.evaluate(v)]
            u = tuple(rng.randrange(q) for _ in range(4))
            w = tuple(rng.randrange(q) for _ in range(4))
            uw = tuple(f.add[x][y] for x, y in zip(u, w))
            # additivity of the polarization in the first slot
            lhs = form.polarization(uw, v)
            rhs = f.add[form.polarization(u, v)][form.polarization(w, v)]
            assert lhs == rhs


def test_totally_singular_examples():
    form = hyperbolic_form(2, 2)
    span13 = rref([standard_vector(0, 4), standard_vector(2, 4)], 4, 2)
    span12 = rref([standard_vector(0, 4), standard_vector(1, 4)], 4, 2)
    assert is_totally_singular(span13, form)
    assert not is_totally_singular(span12, form)
    assert is_totally_singular(zero_space(4, 2), form)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3)])
def test_mts_count_and_bipartite_signs(n, q):
    fam = enumerate_mts(hyperbolic_form(n, q))
    assert len(fam.members) == mts_count(n, q)
    # signs split the parity graph: opposite sign iff odd quotient dimension
    members = fam.members
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            wi, si = members[i]
            wj, sj = members[j]
            odd = (wi.dim - intersect(wi, wj).dim) % 2 == 1
            assert odd == (si != sj)


def test_every_singular_facet_in_two_members_opposite_signs():
    form = hyperbolic_form(2, 2)
    fam = enumerate_mts(form)
    facets = [u for u in enumerate_grassmannian(4, 1, 2)
              if is_totally_singular(u, form)]
    from qgrass.subspace import contains

    for u in facets:
        hits = [(w, s) for w, s in fam.members if contains(w, u)]
        assert len(hits) == 2
        assert hits[0][1] + hits[1][1] == 0


def test_mts_rejects_degenerate_form():
    zero_form = QuadraticForm(n=4, q=2, coeffs=((0,) * 4,) * 4)
    with pytest.raises(PreconditionError):
        enumerate_mts(zero_form)


def test_mts_rejects_nonsplit_form():
    # x1^2 + x2^2 + x3 x4 over F_3: -1 is not a square, so the plane part is
    # anisotropic and the Witt index drops below 2
    coeffs = [[0] * 4 for _ in range(4)]
    coeffs[0][0] = 1
    coeffs[1][1] = 1
    coeffs[2][3] = 1
    form = QuadraticForm(n=4, q=3, coeffs=tuple(tuple(r) for r in coeffs))
    with pytest.raises(PreconditionError):
        enumerate_mts(form)


@pytest.mark.parametrize("n,q,m,want", [(2, 2, 3, 6), (3, 2, 3, 30), (2, 3, 4, 8)])
def test_psi_support_and_cycle(n, q, m, want):
    ch = psi(n, q, m)
    assert ch.support_size() == want
    assert boundary(ch, ModRing(m)).is_zero()


def test_eta_base_case():
    e1 = eta_recursive(1, 2, 3)
    lines = {u.rows: c for u, c in e1.items()}
    assert lines == {((1, 0),): 1, ((0, 1),): 2}


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)])
def test_eta_recursive_equals_explicit(n, q):
    m = q + 1
    rec = eta_recursive(n, q, m)
    exp = eta_explicit(n, q, m)
    assert rec == exp
    assert rec.support_size() == 2**n * q ** (n * (n - 1) // 2)
    assert boundary(rec, ModRing(m)).is_zero()


def test_eta_mod_two_variant():
    rec = eta_recursive(2, 3, 2)
    assert rec == eta_explicit(2, 3, 2)
    assert boundary(rec, ModRing(2)).is_zero()


@pytest.mark.parametrize("n,q,m", [(1, 2, 3), (2, 2, 3), (2, 3, 4)])
def test_pairing(n, q, m):
    rep = pairing_check(n, q, m)
    assert rep.is_unit()
    assert len(rep.common_support) == 1


def test_pairing_common_element_at_n1():
    rep = pairing_check(1, 2, 3)
    assert rep.common_support[0] == rref([(1, 0)], 2, 2)


def test_pairing_form_hyperbolic_pairs():
    form = pairing_form(2, 3)
    f = make_field(3)
    for i in range(2):
        e = standard_vector(2 * i, 4)
        s = tuple(f.add[a][b] for a, b in zip(
            standard_vector(2 * i, 4), standard_vector(2 * i + 1, 4)))
        assert form.evaluate(e) == 0
        assert form.evaluate(s) == 0
        assert form.polarization(e, s) == 1
    assert form.is_nondegenerate()


def test_nontriviality_certificate_on_middle_cycles():
    eta = eta_recursive(2, 2, 3)
    ps = psi(2, 2, 3, form=pairing_form(2, 2))
    verdict = nontriviality_certificate(ps, eta)
    assert verdict.nontrivial
    assert verdict.coset_check_agrees


def test_certificate_zero_for_boundaries():
    rng = random.Random(50)
    ring = ModRing(3)
    grass3 = enumerate_grassmannian(4, 3, 2)
    ps = psi(2, 2, 3)
    assert coboundary(ps, ring).is_zero()
    for _ in range(20):
        x = Chain.build(4, 3, 3, 2,
                        [(u, rng.randrange(1, 3)) for u in rng.sample(grass3, 3)])
        beta = boundary(x, ring)
        assert bilinear(ps, beta) == 0
    z = Chain.zero(4, 2, 3, 2)
    v = nontriviality_certificate(ps, z)
    assert not v.nontrivial


def test_certificate_requires_cocycle():
    not_cocycle = Chain.generator(enumerate_grassmannian(4, 2, 2)[0], 3)
    with pytest.raises(PreconditionError):
        nontriviality_certificate(not_cocycle, not_cocycle)


def test_reference_sign_flip_negates_globally():
    fam = enumerate_mts(hyperbolic_form(2, 2))
    flipped = [(w, -s) for w, s in fam.members]
    ch = Chain.build(4, 2, 3, 2, [(w, s % 3) for w, s in fam.members])
    neg = Chain.build(4, 2, 3, 2, [(w, s % 3) for w, s in flipped])
    assert neg == ch.scale(2)
