import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.errors import NotIrreducible, ZeroInput
from artifact.residue import (
    FFPoly,
    FiniteField,
    ff_factor,
    ff_gcd,
    ff_is_irreducible,
    ff_is_irreducible_exhaustive,
    ff_roots,
    ff_xgcd,
    find_irreducible,
    is_prime,
    prime_field,
    solve_mod_p,
)

FIELDS = [prime_field(2), prime_field(3), prime_field(5), FiniteField(2, (1, 1, 1)), FiniteField(5, (2, 0, 1))]


def ffpoly(F, max_deg=7):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(lambda cs: FFPoly(F, cs))


any_poly = st.sampled_from(FIELDS).flatmap(ffpoly)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms(F):
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.order - 1) == 1
    assert F.from_digits(F.digits(F.order - 1)) == F.order - 1


def test_reducible_modulus_rejected():
    with pytest.raises(NotIrreducible):
        FiniteField(5, (1, 0, 1))


@given(any_poly.filter(lambda g: g.degree >= 1))
def test_factorization_reconstructs(g):
    F = g.field
    prod = FFPoly(F, [1])
    for fac, m in ff_factor(g):
        assert fac.lc == 1
        assert ff_is_irreducible(fac)
        for _ in range(m):
            prod = prod * fac
    assert prod == g.monic()


@given(st.sampled_from(FIELDS[:4]).flatmap(lambda F: ffpoly(F, 5)).filter(lambda g: g.degree >= 1))
def test_rabin_agrees_with_trial_division(g):
    assert ff_is_irreducible(g) == ff_is_irreducible_exhaustive(g)


@given(any_poly, any_poly)
def test_xgcd_bezout(a, b):
    if a.field != b.field:
        return
    if a.is_zero() and b.is_zero():
        return
    d, s, t = ff_xgcd(a, b)
    assert s * a + t * b == d
    assert d == ff_gcd(a, b)


def test_factor_errors_and_order():
    F5 = prime_field(5)
    with pytest.raises(ZeroInput):
        ff_factor(FFPoly(F5, []))
    fs = ff_factor(FFPoly(F5, [F5.from_int(-2), 0, 0, 1]))
    assert [str(f) for f, _ in fs] == ["X+2", "X^2+3*X+4"]
    assert ff_roots(FFPoly(F5, [F5.from_int(-2), 0, 0, 1])) == [3]


def test_find_irreducible_and_inverse_matrix():
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)
    inv = solve_mod_p([[1, 2], [3, 4]], 5)
    assert [[sum(a * b for a, b in zip(r, c)) % 5 for c in zip(*inv)] for r in [[1, 2], [3, 4]]] == [[1, 0], [0, 1]]
