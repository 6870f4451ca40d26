from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.errors import BranchOutOfRange, NotASimpleRoot, NotIntegral, PrecisionExhausted
from artifact.exactnum import INF
from artifact.padic import (
    BranchOracle,
    PadicInt,
    hensel_factor,
    hensel_root,
    max_precision_from_env,
    poly_vp,
    residual_groups,
    residue_int,
    vp,
)
from artifact.polyring import Poly, parse_poly, resultant
from artifact.selftest import SEXTIC

F = parse_poly(SEXTIC)
int_polys = st.lists(st.integers(-300, 300), min_size=1, max_size=6).map(Poly).filter(lambda g: not g.is_zero())


def test_vp():
    assert vp(0, 3) is INF
    assert vp(Fraction(18, 25), 3) == 2
    assert vp(Fraction(18, 25), 5) == -2
    assert poly_vp(Poly([6, 9, 27]), 3) == 1
    assert residue_int(Fraction(1, 2), 5) == 3
    with pytest.raises(NotIntegral):
        residue_int(Fraction(1, 5), 5)


def test_cube_root_of_two_digits():
    x = hensel_root(parse_poly("x^3-2"), 5, 3, 6)
    assert x.digits() == [3, 0, 2, 2, 3, 1]
    assert x.partial_sums()[:3] == [3, 3, 53]
    assert (x.value ** 3 - 2) % 5 ** 6 == 0
    # the fourth digit is forced: among 3 + 0*5 + 2*25 + 2*125 + a*625 only a = 3 solves x^3 = 2 mod 5^5
    base = 3 + 2 * 25 + 2 * 125
    assert [a for a in range(5) if ((base + a * 625) ** 3 - 2) % 5 ** 5 == 0] == [3]


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 12), st.integers(-50, 50), st.integers(1, 30))
def test_hensel_root_is_root(p, N, a, b):
    # g = (x - a) * (x^2 + b*p + 1) has the simple root a mod p when the quadratic is a unit there
    g = Poly([-a, 1]) * Poly([b * p + 1, 0, 1])
    if (a * a + b * p + 1) % p == 0:
        return
    x = hensel_root(g, p, a, N)
    assert x.value % p == a % p
    assert g(x.value) % p ** N == 0
    assert x.value == a % p ** N


def test_hensel_root_errors():
    with pytest.raises(NotASimpleRoot):
        hensel_root(parse_poly("x^2-4"), 2, 0, 3)
    with pytest.raises(NotASimpleRoot):
        hensel_root(parse_poly("x^2-2"), 5, 1, 3)
    with pytest.raises(ValueError):
        PadicInt(5, 30, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_hensel_factor_product(p):
    N = 12
    parts = hensel_factor(F, p, N)
    prod = Poly([1])
    for part in parts:
        prod = prod * part.to_poly()
    diff = prod - F
    assert all(c % p ** N == 0 for c in diff.coeffs)
    groups = residual_groups(F, p)
    assert len(parts) == len(groups)
    for part, (g, k) in zip(parts, groups):
        power = g
        for _ in range(k - 1):
            power = power * g
        assert part.residue() == power


def test_residual_groups_of_sextic():
    assert [(str(g), k) for g, k in residual_groups(F, 2)] == [("X^2+X+1", 3)]
    assert [(str(g), k) for g, k in residual_groups(F, 3)] == [("X", 6)]
    assert [str(g) for g, _ in residual_groups(F, 5)] == ["X^2+2", "X^2+4*X+1", "X^2+4*X+2"]
    with pytest.raises(NotIntegral):
        residual_groups(Poly([Fraction(1, 2), 0, 1]), 2)


@given(int_polys)
def test_branch_norms_add_up(g):
    # sum over branches of vp(Res(F_i, g)) = vp(Res(F, g))
    oracles = [BranchOracle(5, F, b) for b in range(3)]
    total = sum(o.norm_valuation(g) for o in oracles)
    assert total == vp(resultant(F, g), 5)


@given(int_polys, int_polys)
def test_oracle_multiplicative(g, h):
    o = BranchOracle(5, F, 1)
    assert o(g * h) == o(g) + o(h)


def test_oracle_basics():
    o = BranchOracle(2, F)
    assert o.exact and o.local_degree == 6
    assert o(F) is INF
    assert o(Poly([Fraction(1, 4)])) == -2
    with pytest.raises(BranchOutOfRange):
        BranchOracle(2, F, 1)


def test_precision_exhausted():
    o = BranchOracle(5, F, 0, precision=4, max_precision=8)
    close = o.factor(40)
    with pytest.raises(PrecisionExhausted):
        o(close + 5 ** 40)


def test_max_precision_env(monkeypatch):
    monkeypatch.setenv("MACLANE_MAX_PRECISION", "64")
    assert max_precision_from_env() == 64
    monkeypatch.setenv("MACLANE_MAX_PRECISION", "zero")
    with pytest.raises(ValueError):
        max_precision_from_env()
