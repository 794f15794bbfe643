import pytest

from qgrass.errors import PreconditionError
from qgrass.field import check_field_axioms, make_field


def test_f2_is_xor_and():
    f = make_field(2)
    assert f.add[1][1] == 0
    assert f.mul[1][1] == 1
    assert f.add[0][1] == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_axioms_exhaustively(q):
    check_field_axioms(make_field(q))


def test_f4_uses_the_documented_modulus():
    f = make_field(4)
    assert f.modulus == (1, 1, 1)  # x^2 + x + 1
    # x * x = x + 1 in that quotient: index 2 * 2 -> 3
    assert f.mul[2][2] == 3


@pytest.mark.parametrize("q", [6, 10, 12, 1, 0])
def test_non_prime_powers_rejected(q):
    with pytest.raises(PreconditionError):
        make_field(q)


def test_field_is_cached():
    assert make_field(3) is make_field(3)
