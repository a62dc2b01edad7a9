import itertools

import pytest

from qmat import gf


@pytest.mark.parametrize("a,b,q,want", [(1, 1, 2, 0), (2, 2, 3, 1), (0, 4, 5, 4)])
def test_add(a, b, q, want):
    assert gf.add(a, b, q) == want


@pytest.mark.parametrize("a,b,q,want", [(1, 3, 5, 3), (2, 2, 3, 1), (0, 2, 3, 0)])
def test_mul(a, b, q, want):
    assert gf.mul(a, b, q) == want


@pytest.mark.parametrize("a,q,want", [(1, 7, 1), (2, 3, 2), (2, 5, 3)])
def test_inv(a, q, want):
    assert gf.inv(a, q) == want


def test_inv_zero_is_an_error():
    with pytest.raises(gf.FieldError):
        gf.inv(0, 5)


@pytest.mark.parametrize("q", [0, 1, 4, 6, 9])
def test_non_prime_orders_rejected(q):
    with pytest.raises(gf.FieldError):
        gf.check_order(q)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_field_axioms_exhaustive(q):
    F = range(q)
    for a, b, c in itertools.product(F, repeat=3):
        assert gf.add(gf.add(a, b, q), c, q) == gf.add(a, gf.add(b, c, q), q)
        assert gf.mul(gf.mul(a, b, q), c, q) == gf.mul(a, gf.mul(b, c, q), q)
        assert gf.mul(a, gf.add(b, c, q), q) == gf.add(gf.mul(a, b, q), gf.mul(a, c, q), q)
    for a, b in itertools.product(F, repeat=2):
        assert gf.add(a, b, q) == gf.add(b, a, q)
        assert gf.mul(a, b, q) == gf.mul(b, a, q)
        assert gf.sub(gf.add(a, b, q), b, q) == a
    for a in F:
        assert gf.add(a, gf.neg(a, q), q) == 0
        if a:
            assert gf.mul(a, gf.inv(a, q), q) == 1
