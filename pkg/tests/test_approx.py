from fractions import Fraction

import pytest

from artifact.approx import (
    IMMEDIATE,
    SEPARATE_RESIDUAL,
    SEPARATE_VALUATIONAL,
    analyze,
    pseudo_cauchy_family,
    value_adaptive,
    verify_separate,
)
from artifact.errors import NonConvergent, NotImmediate, NotIntegral
from artifact.exactnum import INF
from artifact.keyval import ValuationChain
from artifact.padic import BranchOracle
from artifact.polyring import Poly, parse_poly, poly_rem
from artifact.selftest import SEXTIC, SEXTIC_SHIFTED

from conftest import oracle_for, report_for

X = Poly.x()
F = parse_poly(SEXTIC)


def test_three_adic_key_is_equivalent_to_binomial_form():
    r = report_for(3, SEXTIC)
    o = oracle_for(3, SEXTIC)
    ours = r.degrees[-1].phi
    binomial = parse_poly("x^3+6*x^2+12*x+6")  # (x + 2)^3 - 2
    assert ours == parse_poly("x^3-3*x^2-6*x-3")
    assert o(binomial) == o(ours) == Fraction(11, 6)
    assert o(binomial - ours) > Fraction(11, 6)
    swapped = ValuationChain(3, r.chain.levels[:-1] + ((binomial, Fraction(11, 6)),), F)
    for g in (X, X ** 2 + 3, binomial * X + 9, X ** 5 - 27 * X):
        assert swapped.value(g) == r.chain.value(g)


def test_shifted_generator_minimal_polynomial():
    y = Poly([1, 2])
    assert poly_rem(parse_poly(SEXTIC_SHIFTED).compose(y), F).is_zero()
    assert not poly_rem(parse_poly("x^6+9*x^4-32*x^3+27*x^2-293").compose(y), F).is_zero()


def test_shifted_generator_path():
    r = report_for(2, SEXTIC_SHIFTED)
    path = [(phi, g) for d in r.degrees for phi, g in d.family]
    y1 = parse_poly("x-1")
    assert path == [(X, 0), (y1, 1), (y1 * y1 + 2 * y1 + 4, Fraction(7, 3))]
    assert r.kinds() == {1: SEPARATE_RESIDUAL, 2: SEPARATE_VALUATIONAL}
    assert (r.e, r.f_res) == (3, 2)


def test_generator_as_stated_runs_to_a_different_field():
    r = report_for(2, "x^6+9*x^4-32*x^3+27*x^2-293")
    assert r.chain.levels == ((parse_poly("x-1"), Fraction(5, 6)),)
    assert (r.e, r.f_res, r.separate) == (6, 1, True)


def test_five_adic_immediate_family():
    r = report_for(5, SEXTIC, 0, 5)
    imm = r.immediate
    assert imm.kind == IMMEDIATE and imm.d == 2 and r.truncated
    assert [g for _, g in imm.family] == [1, 2, 3, 4, 5]
    o = oracle_for(5, SEXTIC)
    for (a, ga), (b, _) in zip(imm.family, imm.family[1:]):
        assert o(b - a) >= ga
    longer = pseudo_cauchy_family(o, r, 2, 7)
    assert longer[:5] == imm.family
    assert [g for _, g in longer] == list(range(1, 8))
    with pytest.raises(NotImmediate):
        pseudo_cauchy_family(o, r, 1, 3)


def test_five_adic_branches_are_all_immediate():
    for b in range(3):
        r = analyze(BranchOracle(5, F, b), immediate_depth=3)
        assert r.kinds()[2] == IMMEDIATE
        assert (r.e, r.f_res) == (1, 2)
        v = verify_separate(r)
        assert not v["separate"] and not v["locally_separate"] and v["product"] == 2


def test_verify_separate_on_global_fixture():
    v = verify_separate(report_for(2, SEXTIC))
    assert v == {
        "separate": True,
        "e": 3,
        "f_res": 2,
        "product": 6,
        "global_degree": 6,
        "local_degree": 6,
        "locally_separate": True,
    }


def test_value_adaptive_edge_cases():
    r = report_for(5, SEXTIC, 0, 5)
    assert value_adaptive(r, F) is INF
    assert value_adaptive(r, Poly([Fraction(1, 25)])) == -2
    probe = oracle_for(5, SEXTIC).factor(6)
    with pytest.raises(NonConvergent):
        value_adaptive(r, probe, max_depth=3)
    assert value_adaptive(r, probe, max_depth=12) == oracle_for(5, SEXTIC)(probe)


def test_generator_must_be_integral():
    with pytest.raises(NotIntegral):
        analyze(BranchOracle(2, parse_poly("x^2-1/4")))


def test_split_prime_gives_one_branch_per_root():
    # x^2 - 26 = (x - 1)(x + 1) mod 5
    for b, root in ((0, -1), (1, 1)):
        o = BranchOracle(5, parse_poly("x^2-26"), b)
        r = analyze(o)
        assert (r.e, r.f_res, o.local_degree) == (1, 1, 1)
        assert r.kinds() == {1: IMMEDIATE} and r.truncated
        fam = r.immediate.family
        values = [g for _, g in fam]
        assert len(values) == 8 and values[0] == 0
        assert all(a < b for a, b in zip(values, values[1:]))
        for phi, g in fam[1:]:
            assert (phi[0] + root) % 5 == 0
            assert o(phi) == g


def test_json_is_stable():
    a = report_for(2, SEXTIC).to_json()
    b = analyze(BranchOracle(2, F)).to_json()
    assert a == b
    assert a["degrees"][1] == {
        "d": 2,
        "kind": SEPARATE_VALUATIONAL,
        "phi": "x^2+x+1",
        "gamma_num": "1",
        "gamma_den": "3",
    }
