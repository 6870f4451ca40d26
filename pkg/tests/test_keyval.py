from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.errors import DegreeOutOfRange, DegreeRegression, InadmissibleValue, NotIrreducible, ZeroInput
from artifact.exactnum import INF, ValueGroup
from artifact.keyval import (
    ValuationChain,
    augment,
    chain_invariants,
    chain_value,
    degree_segment_max,
    is_key_sampled,
    is_ml_key_sampled,
    is_strict_key_sampled,
    lift_residual_factor,
    residual_polynomial,
)
from artifact.polyring import Poly, parse_poly
from artifact.residue import FFPoly, ff_factor

from conftest import oracle_for, report_for
from artifact.selftest import SEXTIC

X = Poly.x()
PHI2 = parse_poly("x^2+x+1")
TWO = ValuationChain(2, [(X, 0), (PHI2, Fraction(1, 3))])
TWO_F = ValuationChain(2, [(X, 0), (PHI2, Fraction(1, 3))], parse_poly(SEXTIC))

coef = st.fractions(min_value=-40, max_value=40, max_denominator=4)
polys = st.lists(coef, min_size=1, max_size=7).map(Poly).filter(lambda g: not g.is_zero())


def test_chain_values():
    assert chain_value(TWO, X) == 0
    assert chain_value(TWO, PHI2) == Fraction(1, 3)
    assert chain_value(TWO, PHI2 * PHI2 * 2) == Fraction(5, 3)
    assert chain_value(TWO, Poly()) is INF
    assert TWO.E == (1, 1, 3) and TWO.e[2] == 3


def test_minpoly_reduction():
    assert TWO_F.value(parse_poly(SEXTIC)) is INF
    assert TWO.raw_value(parse_poly(SEXTIC)) == 1


@given(polys, polys)
def test_chain_is_a_valuation_on_polynomials(g, h):
    assert TWO.raw_value(g * h) == TWO.raw_value(g) + TWO.raw_value(h)
    assert TWO.raw_value(g + h) >= min(TWO.raw_value(g), TWO.raw_value(h))


@given(polys)
def test_values_lie_in_value_group(g):
    assert TWO.raw_value(g) in ValueGroup(3)


def test_chain_construction_errors():
    with pytest.raises(DegreeRegression):
        ValuationChain(2, [(X, 0), (X + 1, 1)])
    with pytest.raises(InadmissibleValue):
        ValuationChain(2, [(X, 0), (PHI2, 0)])
    with pytest.raises(InadmissibleValue):
        TWO.augment(PHI2 + 2, Fraction(1, 3))
    with pytest.raises(DegreeRegression):
        TWO.augment(X, 5)
    with pytest.raises(ValueError):
        ValuationChain(2, [(PHI2, 1)])
    with pytest.raises(DegreeOutOfRange):
        ValuationChain(2, [(X, 0), (X ** 7 + 1, 1)], parse_poly(SEXTIC))


def test_same_degree_augment_replaces_last_level():
    c = augment(TWO, PHI2 + 2, 1)
    assert c.depth == 2 and c.last == (PHI2 + 2, 1)


def test_invariants_and_residue_field():
    G, R = chain_invariants(TWO)
    assert G == ValueGroup(3)
    assert R.order == 4
    assert TWO.pis[2] == (1, 0)


def test_residual_polynomials():
    f = parse_poly(SEXTIC)
    assert str(residual_polynomial(TWO_F.truncated(1), f)) == "X^6+X^5+X^3+X+1"
    assert str(residual_polynomial(TWO_F, f)) == "X+1"
    with pytest.raises(ZeroInput):
        residual_polynomial(TWO, Poly())


def test_lift_reproduces_residual_factor():
    f = parse_poly(SEXTIC)
    base = TWO_F.truncated(1)
    [(psi, mult)] = ff_factor(residual_polynomial(base, f))
    assert mult == 3
    phi = lift_residual_factor(base, psi)
    assert phi == PHI2
    assert residual_polynomial(base, phi) == psi
    assert residual_polynomial(base.augment(phi, 1), phi).degree == 0


def test_lift_rejects_reducible_and_x():
    base = TWO_F.truncated(1)
    F2 = base.residue_field()
    with pytest.raises(NotIrreducible):
        lift_residual_factor(base, FFPoly(F2, [1, 0, 1]))
    with pytest.raises(NotIrreducible):
        lift_residual_factor(base, FFPoly(F2, [0, 1]))


@given(polys, polys)
def test_residual_multiplicative_up_to_unit(g, h):
    lhs = residual_polynomial(TWO, g * h)
    rhs = residual_polynomial(TWO, g) * residual_polynomial(TWO, h)
    assert lhs.monic() == rhs.monic()


def test_segment_maxima():
    assert degree_segment_max(TWO_F, 5) == (Fraction(2, 3), X * PHI2 * PHI2)
    assert degree_segment_max(TWO_F, 0) == (0, Poly([1]))
    with pytest.raises(DegreeOutOfRange):
        degree_segment_max(TWO_F, 6)


def test_key_predicates_on_two_adic_oracle():
    o = oracle_for(2, SEXTIC)
    assert is_strict_key_sampled(o, PHI2, 6).passed
    assert is_key_sampled(o, X, 6).passed
    bad = is_key_sampled(o, X * X, 6)
    assert not bad.passed and bad.witness == (X, X)


def test_ml_key_predicate():
    o2 = oracle_for(2, SEXTIC)
    # 1 + x + x^2 has value 1/3 while every term has value 0
    fail = is_ml_key_sampled(o2, X, 6)
    assert not fail.passed and fail.witness == (Poly([1]), Poly([1]), Poly([1]))
    assert is_ml_key_sampled(o2, X, 2).passed
    o3 = oracle_for(3, SEXTIC)
    fail3 = is_ml_key_sampled(o3, parse_poly("x^3-3"), 6)
    assert not fail3.passed and fail3.witness == (3 * X, Poly([1]))


def test_key_predicates_are_deterministic():
    o = oracle_for(3, SEXTIC)
    phi = report_for(3, SEXTIC).degrees[-1].phi
    a = is_strict_key_sampled(o, phi, 6, trials=50, seed=7)
    b = is_strict_key_sampled(o, phi, 6, trials=50, seed=7)
    assert a == b and a.passed
