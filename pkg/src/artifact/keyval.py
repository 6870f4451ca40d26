"""Inductive valuation chains, residual polynomials and key-polynomial lifts.

A chain is a list of levels (phi_1, gamma_1), ..., (phi_k, gamma_k) with
strictly increasing degrees, deg phi_1 = 1. The value of g is computed by
expanding in powers of phi_k and valuing the coefficients with the
truncated chain.

Residue data. With E_i the denominator of the group generated by 1 and
gamma_1..gamma_i, the relative ramification is e_i = E_i / E_{i-1}.
pi_i is the canonical monomial p^s * prod phi_l^{b_l} (0 <= b_l < e_l)
of value e_i * gamma_i, and y_i is the class of phi_i^{e_i} / pi_i.
The residue field R_i is R_{i-1}(y_i), where the minimal polynomial of
y_i is the residual polynomial psi_i of phi_{i+1}. Every R_i is stored
as a simple extension of F_p, never as a tower.
"""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .errors import (
    DegreeOutOfRange,
    DegreeRegression,
    InadmissibleValue,
    NotAKeyPolynomial,
    NotIrreducible,
    ZeroInput,
)
from .exactnum import INF, ExtendedValue, ValueGroup
from .padic import residue_int, vp
from .polyring import Poly, phi_expand, poly_rem
from .residue import (
    FFPoly,
    FiniteField,
    ff_is_irreducible,
    ff_roots,
    find_irreducible,
    prime_field,
    solve_mod_p,
)


def mono_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def mono_pow(a: Sequence[int], k: int) -> tuple:
    return tuple(k * x for x in a)


@dataclass
class _Residue:
    field: FiniteField
    f: int
    y: Optional[int]
    psi: Optional[FFPoly]
    images: Optional[list]
    inverse: Optional[list]
    prev_degree: int

    def embed(self, c: int) -> int:
        if self.images is None:
            return c
        F = self.field
        acc = 0
        for d, img in zip(_digits(c, F.p, self.prev_degree), self.images):
            if d:
                acc = F.add(acc, F.scale_int(d, img))
        return acc


def _digits(c: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        c, r = divmod(c, p)
        out.append(r)
    return out


class ValuationChain:
    """The valuation nu_{phi_1..phi_k} with optional algebraic context.

    With ``minpoly`` set, :meth:`value` reduces its argument modulo the
    minimal polynomial first. Without it the chain is a valuation on Q[X].
    """

    def __init__(self, p: int, levels: Sequence[tuple], minpoly: Optional[Poly] = None):
        lv = []
        for phi, gamma in levels:
            if gamma is INF:
                raise InadmissibleValue("levels must carry finite values")
            lv.append((phi, Fraction(gamma)))
        if not lv:
            raise ValueError("a chain needs at least one level")
        self.p = p
        self.minpoly = minpoly
        self.levels = tuple(lv)
        self.phis = (None,) + tuple(phi for phi, _ in lv)
        self.gammas = (None,) + tuple(g for _, g in lv)
        E = [1]
        for g in self.gammas[1:]:
            E.append(lcm(E[-1], g.denominator))
        self.E = tuple(E)
        self.e = (None,) + tuple(E[i] // E[i - 1] for i in range(1, len(E)))
        self._lock = threading.RLock()
        self._res: dict[int, _Residue] = {}
        self._check()
        self.pis = (None,) + tuple(
            self.canonical(i - 1, self.e[i] * self.gammas[i]) for i in range(1, len(self.gammas))
        )

    def _check(self):
        prev_deg = 0
        for i in range(1, self.depth + 1):
            phi = self.phis[i]
            if not phi.is_monic():
                raise ValueError(f"key polynomial {phi} is not monic")
            if i == 1 and phi.degree != 1:
                raise ValueError("the first key polynomial must have degree 1")
            if phi.degree <= prev_deg:
                raise DegreeRegression("key degrees must strictly increase")
            prev_deg = phi.degree
            if i > 1 and self.gammas[i] <= self._val(i - 1, phi):
                raise InadmissibleValue(
                    f"gamma {self.gammas[i]} does not exceed the value of {phi}"
                )
        if self.minpoly is not None and prev_deg > self.minpoly.degree:
            raise DegreeOutOfRange("key degree exceeds the degree of the minimal polynomial")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def degrees(self) -> tuple:
        return tuple(phi.degree for phi, _ in self.levels)

    @property
    def last(self) -> tuple:
        return self.levels[-1]

    def __repr__(self):
        body = ", ".join(f"({phi}, {g})" for phi, g in self.levels)
        return f"ValuationChain(p={self.p}, [{body}])"

    def __eq__(self, other):
        return (
            isinstance(other, ValuationChain)
            and (self.p, self.levels, self.minpoly) == (other.p, other.levels, other.minpoly)
        )

    def __hash__(self):
        return hash((self.p, self.levels))

    def truncated(self, i: int) -> "ValuationChain":
        return ValuationChain(self.p, self.levels[:i], self.minpoly)

    def value_group(self, i: Optional[int] = None) -> ValueGroup:
        return ValueGroup(self.E[self.depth if i is None else i])

    # values

    def _val(self, i: int, g: Poly) -> ExtendedValue:
        if g.is_zero():
            return INF
        if i == 0:
            if g.degree > 0:
                raise ValueError("level 0 only values constants")
            return vp(g[0], self.p)
        gam = self.gammas[i]
        best = INF
        for j, gj in enumerate(phi_expand(g, self.phis[i])):
            if gj:
                v = self._val(i - 1, gj) + j * gam
                if v < best:
                    best = v
        return best

    def raw_value(self, g: Poly) -> ExtendedValue:
        """Value on Q[X] without reduction modulo the minimal polynomial."""
        return self._val(self.depth, g)

    def value(self, g: Poly) -> ExtendedValue:
        if self.minpoly is not None:
            g = poly_rem(g, self.minpoly)
        return self._val(self.depth, g)

    __call__ = value

    def mono_value(self, m: Sequence[int]) -> Fraction:
        return m[0] + sum((m[l] * self.gammas[l] for l in range(1, len(m))), Fraction(0))

    def canonical(self, i: int, v) -> tuple:
        """The monomial (s; b_1..b_i) with 0 <= b_l < e_l and value v."""
        v = Fraction(v)
        b = [0] * (i + 1)
        for l in range(i, 0, -1):
            g, e = self.gammas[l], self.e[l]
            for bl in range(e):
                w = v - bl * g
                if self.E[l - 1] % w.denominator == 0:
                    break
            else:
                raise ValueError(f"{v} is not in the value group at level {l}")
            b[l], v = bl, w
        if v.denominator != 1:
            raise ValueError(f"{v} is not in the value group")
        b[0] = int(v)
        return tuple(b)

    # residue fields

    def residue(self, i: int) -> _Residue:
        with self._lock:
            hit = self._res.get(i)
            if hit is None:
                hit = self._build_residue(i)
                self._res[i] = hit
            return hit

    def _build_residue(self, i: int) -> _Residue:
        p = self.p
        if i == 0:
            return _Residue(prime_field(p), 1, None, None, None, None, 1)
        prev = self.residue(i - 1)
        Fprev = prev.field
        psi = self._residual(i, self.phis[i + 1])
        if psi.degree < 1 or psi[0] == 0 or not ff_is_irreducible(psi):
            raise NotAKeyPolynomial(
                f"{self.phis[i + 1]} has reducible residual polynomial {psi} at level {i}"
            )
        psi = psi.monic()
        f = psi.degree
        if f == 1:
            return _Residue(Fprev, 1, Fprev.neg(psi[0]), psi, None, None, Fprev.degree)
        if Fprev.degree == 1:
            F = FiniteField(p, psi.coeffs)
            D = F.degree
            return _Residue(F, f, F.gen(), psi, None, None, 1)
        D = Fprev.degree * f
        F = FiniteField(p, find_irreducible(p, D))
        rho = ff_roots(FFPoly(F, Fprev.modulus))[0]
        images = [F.pow(rho, a) for a in range(Fprev.degree)]
        res = _Residue(F, f, None, psi, images, None, Fprev.degree)
        y = ff_roots(psi.map_coeffs(F, res.embed))[0]
        res.y = y
        cols = []
        for t in range(f):
            yt = F.pow(y, t)
            for img in images:
                cols.append(F.digits(F.mul(img, yt)))
        rows = [[cols[c][r] for c in range(D)] for r in range(D)]
        res.inverse = solve_mod_p(rows, p)
        return res

    def _decompose(self, i: int, c: int) -> list[int]:
        """Coordinates of c in R_i over R_{i-1} in the basis y_i^t, t < f_i."""
        R = self.residue(i)
        if R.f == 1:
            return [c]
        if R.images is None:
            return list(R.field.digits(c))
        p, Dp = self.p, R.prev_degree
        ds = R.field.digits(c)
        x = [sum(a * b for a, b in zip(row, ds)) % p for row in R.inverse]
        Fprev = self.residue(i - 1).field
        return [Fprev.from_digits(x[t * Dp:(t + 1) * Dp]) for t in range(R.f)]

    def residue_class(self, i: int, a: Poly, m: Sequence[int]) -> int:
        """Class in R_i of a / m, where deg a < deg phi_{i+1} and nu_i(a) = value(m)."""
        if a.is_zero():
            return 0
        if i == 0:
            x = a[0] / Fraction(self.p) ** m[0]
            if vp(x, self.p) != 0:
                raise ValueError("constant does not have the monomial's value")
            return residue_int(x, self.p)
        R = self.residue(i)
        F = R.field
        gam, e, pi = self.gammas[i], self.e[i], self.pis[i]
        target = self.mono_value(m)
        b, rest = m[i], tuple(m[:i])
        acc = 0
        for j, aj in enumerate(phi_expand(a, self.phis[i])):
            if aj.is_zero():
                continue
            v = self._val(i - 1, aj) + j * gam
            if v < target:
                raise ValueError("polynomial value is below the monomial's value")
            if v > target:
                continue
            t, rem = divmod(j - b, e)
            if rem:
                raise ValueError("monomial exponent is incompatible with the support")
            c = self.residue_class(i - 1, aj, mono_mul(rest, mono_pow(pi, -t)))
            acc = F.add(acc, F.mul(R.embed(c), F.pow(R.y, t)))
        return acc

    def lift(self, i: int, c: int, m: Sequence[int]) -> Poly:
        """A polynomial of degree < deg phi_{i+1} whose class over m is c."""
        if c == 0:
            return Poly()
        if i == 0:
            return Poly.const(c * Fraction(self.p) ** m[0])
        R = self.residue(i)
        F = R.field
        e, pi, phi = self.e[i], self.pis[i], self.phis[i]
        b, rest = m[i], tuple(m[:i])
        b0 = b % e
        u = (b0 - b) // e
        comps = self._decompose(i, F.mul(c, F.pow(R.y, -u)))
        out = Poly()
        for tp, ct in enumerate(comps):
            if ct:
                aj = self.lift(i - 1, ct, mono_mul(rest, mono_pow(pi, -(u + tp))))
                out = out + aj * phi ** (b0 + tp * e)
        return out

    def _residual(self, i: int, g: Poly) -> FFPoly:
        phi, gam, e, pi = self.phis[i], self.gammas[i], self.e[i], self.pis[i]
        expansion = phi_expand(g, phi)
        vals = {j: self._val(i - 1, gj) + j * gam for j, gj in enumerate(expansion) if gj}
        v = min(vals.values())
        support = sorted(j for j, w in vals.items() if w == v)
        s = support[0]
        low = self.canonical(i - 1, v - s * gam)
        Fprev = self.residue(i - 1).field
        coeffs = [0] * ((support[-1] - s) // e + 1)
        for j in support:
            t, rem = divmod(j - s, e)
            if rem:
                raise ValueError("support is not compatible with the ramification")
            coeffs[t] = self.residue_class(i - 1, expansion[j], mono_mul(low, mono_pow(pi, -t)))
        return FFPoly(Fprev, coeffs)

    def residue_field(self) -> FiniteField:
        """R_{k-1}: the field of the residual polynomials at the last level."""
        return self.residue(self.depth - 1).field

    # construction

    def augment(self, phi: Poly, gamma) -> "ValuationChain":
        if gamma is INF:
            raise InadmissibleValue("augmentation needs a finite value")
        gamma = Fraction(gamma)
        last = self.phis[-1].degree
        if phi.degree < last:
            raise DegreeRegression(f"degree {phi.degree} is below the last key degree {last}")
        current = self.raw_value(phi)
        if gamma <= current:
            raise InadmissibleValue(f"gamma {gamma} does not exceed the current value {current}")
        if phi.degree == last:
            levels = self.levels[:-1] + ((phi, gamma),)
        else:
            levels = self.levels + ((phi, gamma),)
        return ValuationChain(self.p, levels, self.minpoly)


def chain_value(c: ValuationChain, g: Poly) -> ExtendedValue:
    return c.value(g)


def augment(c: ValuationChain, phi: Poly, gamma) -> ValuationChain:
    return c.augment(phi, gamma)


def residual_polynomial(c: ValuationChain, g: Poly) -> FFPoly:
    """Residual polynomial of g at the last level, over R_{k-1}.

    The argument is used as an element of Q[X]; it is not reduced modulo
    the minimal polynomial. The result has nonzero constant term.
    """
    if g.is_zero():
        raise ZeroInput("residual polynomial of zero")
    return c._residual(c.depth, g)


def lift_residual_factor(c: ValuationChain, psi: FFPoly) -> Poly:
    """Monic phi' of degree deg(psi) * e_k * deg(phi_k) with residual polynomial psi."""
    k = c.depth
    F = c.residue(k - 1).field
    if psi.field != F:
        raise ValueError(f"factor is over {psi.field}, expected {F}")
    if psi.degree < 1 or not ff_is_irreducible(psi):
        raise NotIrreducible(f"{psi} is not irreducible")
    psi = psi.monic()
    if psi[0] == 0:
        raise NotIrreducible("the factor X does not lift to a key polynomial")
    phi, e, pi = c.phis[k], c.e[k], c.pis[k]
    f = psi.degree
    if f == 1:
        return phi ** e - c.lift(k - 1, F.neg(psi[0]), pi)
    out = phi ** (e * f)
    for t in range(f):
        if psi[t]:
            out = out + c.lift(k - 1, psi[t], mono_pow(pi, f - t)) * phi ** (t * e)
    return out


def chain_invariants(c: ValuationChain) -> tuple[ValueGroup, FiniteField]:
    return c.value_group(), c.residue_field()


def degree_segment_max(c: ValuationChain, n: int) -> tuple[ExtendedValue, Poly]:
    """Value and witness of the standard monic monomial of degree n."""
    if n < 0:
        raise DegreeOutOfRange("degree must be non-negative")
    if c.minpoly is not None and n >= c.minpoly.degree:
        raise DegreeOutOfRange(f"degree {n} is not below {c.minpoly.degree}")
    exps = [0] * (c.depth + 1)
    rest = n
    for i in range(c.depth, 0, -1):
        exps[i], rest = divmod(rest, c.phis[i].degree)
    witness = Poly.const(1)
    for i in range(1, c.depth + 1):
        if exps[i]:
            witness = witness * c.phis[i] ** exps[i]
    return c.value(witness), witness


# sampled key predicates

@dataclass(frozen=True)
class KeyCheck:
    passed: bool
    witness: Optional[tuple] = None
    checked: int = 0

    def __bool__(self):
        return self.passed


def _height_order(cs: tuple) -> tuple:
    return (sum(abs(c) for c in cs), len([c for c in cs if c]), cs)


def _pool(d: int, p: Optional[int], height: int = 2) -> list[Poly]:
    """Nonzero polynomials of degree < d.

    Order: monomials, p-power multiples of monomials, small-height
    polynomials, then monomials perturbed by a p-power term.
    """
    out, seen = [], set()

    def add(poly):
        if not poly.is_zero() and poly not in seen:
            seen.add(poly)
            out.append(poly)

    for i in range(d):
        add(Poly.monomial(i))
    scales = [u * p ** k for k in (1, 2) for u in (1, -1, 2, -2)] if p else []
    for c in scales:
        for i in range(d):
            add(Poly.monomial(i, c))
    small = sorted(itertools.product(range(-height, height + 1), repeat=d), key=_height_order)
    for cs in small:
        add(Poly(cs))
    for c in scales:
        for i in range(d):
            for j in range(d):
                if j != i:
                    add(Poly.monomial(j) + Poly.monomial(i, c))
    return out


def _index_tuples(size: int, slots: int):
    """Index tuples over range(size), by increasing sum."""
    for total in range(slots * (size - 1) + 1):
        yield from _tuples_with_sum(size, slots, total)


def _tuples_with_sum(size, slots, total):
    if slots == 1:
        if total < size:
            yield (total,)
        return
    for first in range(min(size - 1, total), -1, -1):
        for rest in _tuples_with_sum(size, slots - 1, total - first):
            yield (first,) + rest


def _random_poly(rng: random.Random, deg: int, p: Optional[int]) -> Poly:
    cs = []
    for _ in range(deg + 1):
        c = rng.randint(-10 ** 6, 10 ** 6)
        if p and rng.random() < 0.3:
            c *= p ** rng.randint(1, 3)
        cs.append(c)
    if cs[-1] == 0:
        cs[-1] = 1
    return Poly(cs)


def _pairs(d: int, n_cap: int, p, trials: int, seed: int, limit: int):
    pool = _pool(d, p)
    count = 0
    for total in range(2 * len(pool) - 1):
        for i in range(max(0, total - len(pool) + 1), total // 2 + 1):
            f, g = pool[i], pool[total - i]
            if f.degree + g.degree < n_cap:
                yield f, g
                count += 1
                if count >= limit:
                    break
        if count >= limit:
            break
    rng = random.Random(seed)
    for _ in range(trials):
        df = rng.randrange(d)
        dg = rng.randrange(d)
        while df + dg >= n_cap and (df or dg):
            if df >= dg:
                df -= 1
            else:
                dg -= 1
        yield _random_poly(rng, df, p), _random_poly(rng, dg, p)


def _key_check(valfn, phi, n_cap, trials, seed, strict, limit) -> KeyCheck:
    if phi.degree < 1 or not phi.is_monic():
        raise ValueError("key candidates must be monic of positive degree")
    p = getattr(valfn, "p", None)
    checked = 0
    for f, g in _pairs(phi.degree, n_cap, p, trials, seed, limit):
        checked += 1
        fg = f * g
        q, r = divmod_monic(fg, phi)
        vr = valfn(r)
        if valfn(fg) != vr:
            return KeyCheck(False, (f, g), checked)
        if strict and not vr < valfn(q * phi):
            return KeyCheck(False, (f, g), checked)
    return KeyCheck(True, None, checked)


def divmod_monic(f: Poly, phi: Poly) -> tuple[Poly, Poly]:
    from .polyring import euclid_div

    return euclid_div(f, phi)


def is_key_sampled(
    valfn: Callable[[Poly], ExtendedValue],
    phi: Poly,
    n_cap: int,
    trials: int = 500,
    seed: int = 0,
    exhaustive_limit: int = 400,
) -> KeyCheck:
    """One-sided check of nu(fg) = nu(fg mod phi) for deg f, deg g < deg phi."""
    return _key_check(valfn, phi, n_cap, trials, seed, False, exhaustive_limit)


def is_strict_key_sampled(
    valfn: Callable[[Poly], ExtendedValue],
    phi: Poly,
    n_cap: int,
    trials: int = 500,
    seed: int = 0,
    exhaustive_limit: int = 400,
) -> KeyCheck:
    """As :func:`is_key_sampled`, also requiring nu(r) < nu(q*phi)."""
    return _key_check(valfn, phi, n_cap, trials, seed, True, exhaustive_limit)


def is_ml_key_sampled(
    valfn: Callable[[Poly], ExtendedValue],
    phi: Poly,
    n_cap: int,
    trials: int = 500,
    seed: int = 0,
    exhaustive_limit: int = 400,
) -> KeyCheck:
    """Key check plus nu(sum f_i phi^i) = min nu(f_i phi^i) on sampled combinations."""
    base = is_key_sampled(valfn, phi, n_cap, trials, seed, exhaustive_limit)
    if not base:
        return base
    d = phi.degree
    top = (n_cap - 1) // d
    if top < 1:
        return base
    p = getattr(valfn, "p", None)
    powers = [phi ** i for i in range(top + 1)]

    def check(parts):
        terms = [fi * powers[i] for i, fi in enumerate(parts)]
        total = Poly()
        for t in terms:
            total = total + t
        lo = min(valfn(t) for t in terms)
        return valfn(total) == lo

    checked = base.checked
    pool = _pool(d, p)
    zero = Poly()
    for m in range(1, top + 1):
        for count, idx in enumerate(_index_tuples(len(pool), m + 1)):
            if count >= exhaustive_limit:
                break
            parts = [pool[i] for i in idx]
            checked += 1
            if not check(parts):
                return KeyCheck(False, tuple(parts), checked)
    rng = random.Random(seed + 1)
    for _ in range(trials):
        m = rng.randint(1, top)
        parts = [
            _random_poly(rng, rng.randrange(d), p) if rng.random() < 0.8 else zero
            for _ in range(m + 1)
        ]
        if all(x.is_zero() for x in parts):
            continue
        checked += 1
        if not check(parts):
            return KeyCheck(False, tuple(parts), checked)
    return KeyCheck(True, None, checked)
