"""End-to-end analysis: key polynomials, key-degree classes, and adaptive values.

The run starts from the chain [(X, nu(X))]. Each step factors the residual
polynomial of the minimal polynomial, lifts every irreducible factor to a
candidate key polynomial, and keeps the one whose oracle value exceeds its
chain value. A candidate of the current degree replaces the last level; a
larger one opens a new key degree.

Let D be the local degree (degree of the branch factor) and n the global
degree. Reaching a candidate of degree n ends the run. Reaching degree
D < n means the current degree is immediate: same-degree steps never stop,
so the run keeps ``immediate_depth`` members of the family and marks the
report truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InconsistentAnalysis, NegativeGeneratorValue, NonConvergent, NotImmediate, ReducibleBranch
from .exactnum import INF, ExtendedValue, value_to_json
from .keyval import ValuationChain, lift_residual_factor, residual_polynomial
from .padic import BranchOracle
from .polyring import Poly, format_poly, poly_rem
from .residue import FFPoly, ff_factor

SEPARATE_RESIDUAL = "SeparateResidual"
SEPARATE_VALUATIONAL = "SeparateValuational"
IMMEDIATE = "Immediate"

DEFAULT_IMMEDIATE_DEPTH = 8
DEFAULT_MAX_STEPS = 200


@dataclass
class KeyDegreeReport:
    d: int
    kind: str
    family: list  # [(phi, gamma)], one entry per same-degree step
    residual_factor: Optional[FFPoly] = None

    @property
    def phi(self) -> Poly:
        return self.family[-1][0]

    @property
    def gamma(self) -> Fraction:
        return self.family[-1][1]

    def to_json(self) -> dict:
        g = Fraction(self.gamma)
        out = {
            "d": self.d,
            "kind": self.kind,
            "phi": format_poly(self.phi),
            "gamma_num": str(g.numerator),
            "gamma_den": str(g.denominator),
        }
        if self.kind == IMMEDIATE or len(self.family) > 1:
            out["family"] = [
                {"phi": format_poly(ph), "gamma": value_to_json(gm)} for ph, gm in self.family
            ]
        return out


@dataclass
class AnalysisReport:
    oracle: BranchOracle = field(repr=False)
    degrees: list
    chain: ValuationChain
    e: int
    f_res: int
    truncated: bool
    final_factor: Optional[FFPoly] = None
    seed: int = 0

    @property
    def prime(self) -> int:
        return self.oracle.p

    @property
    def minpoly(self) -> Poly:
        return self.oracle.minpoly

    @property
    def local_degree(self) -> int:
        return self.oracle.local_degree

    @property
    def branch_count(self) -> int:
        return self.oracle.branch_count

    @property
    def separate(self) -> bool:
        return self.e * self.f_res == self.minpoly.degree

    @property
    def immediate(self) -> Optional[KeyDegreeReport]:
        for r in self.degrees:
            if r.kind == IMMEDIATE:
                return r
        return None

    def kinds(self) -> dict:
        return {r.d: r.kind for r in self.degrees}

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "minpoly": format_poly(self.minpoly),
            "branch": self.oracle.branch,
            "branch_count": self.branch_count,
            "local_degree": self.local_degree,
            "degrees": [r.to_json() for r in self.degrees],
            "e": self.e,
            "f_res": self.f_res,
            "separate": self.separate,
            "truncated": self.truncated,
            "seed": self.seed,
        }


def _next_key(chain: ValuationChain, oracle: BranchOracle, seed: int):
    """The unique lifted residual factor whose oracle value beats its chain value."""
    f = oracle.minpoly
    psi_f = residual_polynomial(chain, f)
    hits = []
    for fac, _ in ff_factor(psi_f, seed=seed):
        phi = lift_residual_factor(chain, fac)
        g = oracle(phi)
        if g > chain.raw_value(phi):
            hits.append((fac, phi, g))
    if not hits:
        raise InconsistentAnalysis(f"no residual factor of {psi_f} matches the branch")
    if len(hits) > 1:
        raise ReducibleBranch(
            "residual factors " + ", ".join(str(h[0]) for h in hits) + " all match the branch"
        )
    return hits[0]


def _kind(chain: ValuationChain) -> str:
    return SEPARATE_VALUATIONAL if chain.e[chain.depth] > 1 else SEPARATE_RESIDUAL


def analyze(
    oracle: BranchOracle,
    immediate_depth: int = DEFAULT_IMMEDIATE_DEPTH,
    max_steps: int = DEFAULT_MAX_STEPS,
    seed: int = 0,
) -> AnalysisReport:
    f = oracle.minpoly
    n, D = f.degree, oracle.local_degree
    if immediate_depth < 1:
        raise ValueError("immediate_depth must be at least 1")
    X = Poly.x()
    g1 = oracle(X)
    if g1 is INF:
        raise InconsistentAnalysis("the generator has infinite value")
    if g1 < 0:
        raise NegativeGeneratorValue(f"nu(x) = {g1} < 0; rescale the generator")
    chain = ValuationChain(oracle.p, [(X, g1)], f)
    degrees = [KeyDegreeReport(1, "", [(X, g1)])]
    truncated = False
    final = None
    steps = 0
    while True:
        current = degrees[-1]
        if chain.phis[-1].degree == D < n and len(current.family) >= immediate_depth:
            truncated = True
            current.kind = IMMEDIATE
            break
        fac, phi, gamma = _next_key(chain, oracle, seed)
        d_new = phi.degree
        if d_new > D:
            raise InconsistentAnalysis(f"key degree {d_new} exceeds the local degree {D}")
        if d_new == n:
            current.kind = _kind(chain)
            final = fac
            break
        if d_new == chain.phis[-1].degree:
            chain = chain.augment(phi, gamma)
            current.family.append((phi, gamma))
        else:
            current.kind = _kind(chain)
            chain = chain.augment(phi, gamma)
            degrees.append(KeyDegreeReport(d_new, "", [(phi, gamma)], fac))
        steps += 1
        if steps > max_steps:
            raise NonConvergent(f"no termination after {max_steps} steps")
    e = chain.E[chain.depth]
    f_res = chain.residue_field().degree * (final.degree if final is not None else 1)
    if e * f_res != D:
        raise InconsistentAnalysis(f"e * f = {e * f_res} differs from the local degree {D}")
    return AnalysisReport(oracle, degrees, chain, e, f_res, truncated, final, seed)


def pseudo_cauchy_family(
    oracle: BranchOracle, report: AnalysisReport, d: int, depth: int
) -> list[tuple[Poly, Fraction]]:
    """The first ``depth`` same-degree key polynomials at the immediate degree d."""
    imm = report.immediate
    if imm is None or imm.d != d:
        raise NotImmediate(f"degree {d} is not immediate in this analysis")
    fam = list(imm.family)
    if len(fam) >= depth:
        return fam[:depth]
    base = report.chain.levels[:-1]
    chain = ValuationChain(oracle.p, base + (fam[-1],), oracle.minpoly)
    while len(fam) < depth:
        _, phi, gamma = _next_key(chain, oracle, report.seed)
        if phi.degree != d:
            raise InconsistentAnalysis("immediate family left its degree")
        chain = chain.augment(phi, gamma)
        fam.append((phi, gamma))
    return fam


def value_adaptive(report: AnalysisReport, g: Poly, max_depth: Optional[int] = None) -> ExtendedValue:
    """nu(g) from the chain; at an immediate degree, walk the family until two values agree."""
    f = report.minpoly
    g = poly_rem(g, f)
    if g.is_zero():
        return INF
    imm = report.immediate
    if imm is None:
        return report.chain.value(g)
    depth = len(imm.family) if max_depth is None else max(max_depth, 2)
    fam = imm.family if depth <= len(imm.family) else pseudo_cauchy_family(report.oracle, report, imm.d, depth)
    base = report.chain.levels[:-1]
    prev = None
    for phi, gamma in fam[:depth]:
        v = ValuationChain(report.prime, base + ((phi, gamma),), f).value(g)
        if v == prev:
            return v
        prev = v
    raise NonConvergent(f"family of depth {depth} did not stabilize on {format_poly(g)}")


def verify_separate(report: AnalysisReport) -> dict:
    product = report.e * report.f_res
    return {
        "separate": product == report.minpoly.degree,
        "e": report.e,
        "f_res": report.f_res,
        "product": product,
        "global_degree": report.minpoly.degree,
        "local_degree": report.local_degree,
        "locally_separate": product == report.local_degree and not report.truncated,
    }
