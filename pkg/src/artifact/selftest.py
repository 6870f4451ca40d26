"""Fixture suite behind ``artifact selftest``.

Each fixture computes a JSON-able value and compares it with a frozen
expectation. The running example is the sextic below over p = 2, 3, 5,
plus the same field presented by the generator y = 2x + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .approx import analyze, value_adaptive
from .exactnum import value_to_json
from .keyval import ValuationChain, degree_segment_max, residual_polynomial
from .padic import BranchOracle, hensel_root
from .polyring import Poly, format_poly, parse_poly, poly_inverse_mod, poly_rem
from .residue import ff_factor

SEXTIC = "x^6+3*x^5+6*x^4+3*x^3+9*x+9"
# minimal polynomial of 2x + 1 where x is a root of SEXTIC
SEXTIC_SHIFTED = "x^6+9*x^4-32*x^3+27*x^2+288*x+283"


def cube_root_of_two() -> Poly:
    """c(x) with c^3 = 2 in Q[x]/(SEXTIC); x = j + c for a primitive cube root of unity j."""
    f = parse_poly(SEXTIC)
    j = poly_rem(parse_poly("x^3-3*x-3") * poly_inverse_mod(parse_poly("3*x^2+3*x"), f), f)
    return Poly.x() - j


@dataclass(frozen=True)
class Fixture:
    name: str
    compute: Callable[[int], Any]
    expected: Any


def _report(p, text, branch=0, depth=8):
    return analyze(BranchOracle(p, parse_poly(text), branch), immediate_depth=depth)


def _summary(r):
    return {
        "kinds": {str(k): v for k, v in r.kinds().items()},
        "chain": [[format_poly(phi), value_to_json(g)] for phi, g in r.chain.levels],
        "e": r.e,
        "f_res": r.f_res,
        "separate": r.separate,
    }


def _two_adic(seed):
    r = _report(2, SEXTIC)
    out = _summary(r)
    out["value_phi2"] = value_to_json(value_adaptive(r, parse_poly("x^2+x+1")))
    return out


def _three_adic(seed):
    r = _report(3, SEXTIC)
    out = _summary(r)
    out["value_x"] = value_to_json(value_adaptive(r, Poly.x()))
    out["gamma3"] = value_to_json(r.degrees[-1].gamma)
    return out


def _five_adic(seed):
    o = BranchOracle(5, parse_poly(SEXTIC), 0)
    r = analyze(o, immediate_depth=5)
    chain = ValuationChain(5, [(Poly.x(), 0)], o.minpoly)
    psi = ff_factor(residual_polynomial(chain, o.minpoly))[0][0]
    from .residue import FFPoly, FiniteField

    F = FiniteField(5, (1, 1, 1))
    cube = ff_factor(FFPoly(F, [F.from_int(-2), 0, 0, 1]))
    return {
        "branches": o.branch_count,
        "local_degree": o.local_degree,
        "kinds": {str(k): v for k, v in r.kinds().items()},
        "e": r.e,
        "f_res": r.f_res,
        "truncated": r.truncated,
        "residual_factor": str(psi),
        "cube_roots": [str(g) for g, _ in cube],
        "probe": value_to_json(o(cube_root_of_two() - 3)),
    }


def _digits(seed):
    x = hensel_root(parse_poly("x^3-2"), 5, 3, 5)
    return {"digits": x.digits(), "x2": x.partial_sums()[2]}


def _shifted(seed):
    r = _report(2, SEXTIC_SHIFTED)
    out = _summary(r)
    out["path"] = [[format_poly(phi), value_to_json(g)] for d in r.degrees for phi, g in d.family]
    return out


def _segments(seed):
    r = _report(2, SEXTIC)
    out = {}
    for n in (3, 4):
        v, w = degree_segment_max(r.chain, n)
        out[str(n)] = [value_to_json(v), format_poly(w)]
    return out


def _approximation(seed, trials=40):
    rng = random.Random(seed)
    bad = []
    for p, text in ((2, SEXTIC), (3, SEXTIC), (5, SEXTIC), (2, SEXTIC_SHIFTED)):
        r = _report(p, text)
        for _ in range(trials):
            g = Poly([rng.randint(-10 ** 4, 10 ** 4) for _ in range(rng.randint(1, 6))])
            if value_adaptive(r, g) != r.oracle(g):
                bad.append([p, format_poly(g)])
    return bad


def _j(num, den=1):
    return {"num": str(num), "den": str(den)}


FIXTURES = [
    Fixture(
        "sextic 2-adic",
        _two_adic,
        {
            "kinds": {"1": "SeparateResidual", "2": "SeparateValuational"},
            "chain": [["x", _j(0)], ["x^2+x+1", _j(1, 3)]],
            "e": 3,
            "f_res": 2,
            "separate": True,
            "value_phi2": _j(1, 3),
        },
    ),
    Fixture(
        "sextic 3-adic",
        _three_adic,
        {
            "kinds": {"1": "SeparateValuational", "3": "SeparateValuational"},
            "chain": [["x", _j(1, 3)], ["x^3-3*x^2-6*x-3", _j(11, 6)]],
            "e": 6,
            "f_res": 1,
            "separate": True,
            "value_x": _j(1, 3),
            "gamma3": _j(11, 6),
        },
    ),
    Fixture(
        "sextic 5-adic branch 0",
        _five_adic,
        {
            "branches": 3,
            "local_degree": 2,
            "kinds": {"1": "SeparateResidual", "2": "Immediate"},
            "e": 1,
            "f_res": 2,
            "truncated": True,
            "residual_factor": "X^2+2",
            "cube_roots": ["X+2", "X+2*z", "X+(3*z+3)"],
            "probe": _j(2),
        },
    ),
    Fixture("5-adic digits of the cube root of 2", _digits, {"digits": [3, 0, 2, 2, 3], "x2": 53}),
    Fixture(
        "shifted generator 2-adic",
        _shifted,
        {
            "kinds": {"1": "SeparateResidual", "2": "SeparateValuational"},
            "chain": [["x-1", _j(1)], ["x^2+3", _j(7, 3)]],
            "e": 3,
            "f_res": 2,
            "separate": True,
            "path": [["x", _j(0)], ["x-1", _j(1)], ["x^2+3", _j(7, 3)]],
        },
    ),
    Fixture(
        "segment maxima",
        _segments,
        {"3": [_j(1, 3), "x^3+x^2+x"], "4": [_j(2, 3), "x^4+2*x^3+3*x^2+2*x+1"]},
    ),
    Fixture("adaptive value equals oracle on seeded samples", _approximation, []),
]


def run_selftest(seed: int = 0, fixtures: Optional[list] = None) -> dict:
    results = []
    for fx in FIXTURES if fixtures is None else fixtures:
        try:
            actual = fx.compute(seed)
            ok = actual == fx.expected
            entry = {"name": fx.name, "ok": ok}
            if not ok:
                entry["expected"] = fx.expected
                entry["actual"] = actual
        except Exception as exc:  # report, keep going
            entry = {"name": fx.name, "ok": False, "error": f"{type(exc).__name__}: {exc}"}
        results.append(entry)
    failed = [r["name"] for r in results if not r["ok"]]
    return {"seed": seed, "passed": len(results) - len(failed), "failed": failed, "results": results}
