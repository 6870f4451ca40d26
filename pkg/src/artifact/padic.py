"""p-adic valuation on Q, Hensel lifting, and the branch oracle.

The oracle computes the value of g(chi) for the extension of v_p selected
by one Hensel factor F of the minimal polynomial:

    nu(g) = v_p(Res(F, g)) / deg F.

F is only known modulo p^N, so a result is accepted only when
v_p(Res) < N (then it cannot depend on the unknown higher digits of F),
and it is confirmed once more at doubled precision.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BranchOutOfRange,
    NotASimpleRoot,
    NotIntegral,
    PrecisionExhausted,
    ZeroInput,
)
from .exactnum import INF, ExtendedValue
from .polyring import Poly, poly_rem, resultant
from .residue import FFPoly, ff_factor, ff_xgcd, is_prime, prime_field

DEFAULT_PRECISION = 32
DEFAULT_MAX_PRECISION = 4096
PRECISION_ENV = "MACLANE_MAX_PRECISION"


def vp_int(n: int, p: int) -> ExtendedValue:
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(r, p: int) -> ExtendedValue:
    """Exact p-adic valuation of a rational; vp(0) is INF."""
    r = Fraction(r)
    if r == 0:
        return INF
    return vp_int(r.numerator, p) - vp_int(r.denominator, p)


def poly_vp(g: Poly, p: int) -> ExtendedValue:
    """Minimum valuation of the coefficients (the Gauss content)."""
    best = INF
    for c in g.coeffs:
        if c:
            v = vp(c, p)
            if v < best:
                best = v
    return best


def residue_int(r, p: int, modulus: int | None = None) -> int:
    """A p-integral rational reduced modulo ``modulus`` (default p)."""
    r = Fraction(r)
    m = p if modulus is None else modulus
    if r.denominator % p == 0:
        raise NotIntegral(f"{r} is not {p}-integral")
    return r.numerator * pow(r.denominator, -1, m) % m


def _integral_residues(g: Poly, p: int, modulus: int) -> list[int]:
    return [residue_int(c, p, modulus) for c in g.coeffs]


@dataclass(frozen=True)
class PadicInt:
    p: int
    value: int
    precision: int

    def __post_init__(self):
        if not 0 <= self.value < self.p ** self.precision:
            raise ValueError("value out of range for the precision")

    def digits(self) -> list[int]:
        out, v = [], self.value
        for _ in range(self.precision):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def partial_sums(self) -> list[int]:
        return [self.value % self.p ** (k + 1) for k in range(self.precision)]


@dataclass(frozen=True)
class PadicPoly:
    p: int
    precision: int
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("p-adic factor must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def residue(self) -> FFPoly:
        return FFPoly(prime_field(self.p), [c % self.p for c in self.coeffs])


def hensel_root(g: Poly, p: int, r0: int, N: int) -> PadicInt:
    """Lift a simple root r0 of g mod p to a root mod p^N."""
    if N < 1:
        raise ValueError("precision must be at least 1")
    M = p ** N
    cs = _integral_residues(g, p, M)
    dcs = [i * c for i, c in enumerate(cs)][1:]

    def ev(poly, x, m):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % m
        return acc

    x = r0 % p
    if ev(cs, x, p):
        raise NotASimpleRoot(f"{r0} is not a root of the polynomial mod {p}")
    if ev(dcs, x, p) == 0:
        raise NotASimpleRoot(f"the derivative vanishes at {r0} mod {p}")
    k = 1
    while k < N:
        k = min(2 * k, N)
        m = p ** k
        x = (x - ev(cs, x, m) * pow(ev(dcs, x, m), -1, m)) % m
    return PadicInt(p, x % M, N)


# integer polynomial helpers, lowest degree first, reduced modulo m

def _zstrip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zstrip([c % m for c in out])


def _zadd(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    return _zstrip([(x + (b[i] if i < len(b) else 0)) % m for i, x in enumerate(a)])


def _zsub(a, b, m):
    return _zadd(a, [-c for c in b], m)


def _zdivmod(a, b, m):
    """Division by a monic b over Z/m."""
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _zstrip([c % m for c in r])
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % m
        q[k - db] = c
        if c:
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return _zstrip([c % m for c in q]), _zstrip([c % m for c in r[:db]])


def _lift_pair(f, g, h, p, N):
    """Quadratic Hensel lifting of f = g*h (h monic) from mod p to mod p^N."""
    Fp = prime_field(p)
    one, s, t = ff_xgcd(FFPoly(Fp, [c % p for c in g]), FFPoly(Fp, [c % p for c in h]))
    if not one.is_one():
        raise ValueError("factors are not coprime modulo p")
    s, t = list(s.coeffs), list(t.coeffs)
    k = 1
    while k < N:
        k = min(2 * k, N)
        m = p ** k
        e = _zsub(f, _zmul(g, h, m), m)
        q, r = _zdivmod(_zmul(s, e, m), h, m)
        g = _zadd(g, _zadd(_zmul(t, e, m), _zmul(q, g, m), m), m)
        h = _zadd(h, r, m)
        b = _zsub(_zadd(_zmul(s, g, m), _zmul(t, h, m), m), [1], m)
        c, d = _zdivmod(_zmul(s, b, m), h, m)
        s = _zsub(s, d, m)
        t = _zsub(_zsub(t, _zmul(t, b, m), m), _zmul(c, g, m), m)
    return g, h


def residual_groups(f: Poly, p: int, seed: int = 0) -> list[tuple[FFPoly, int]]:
    """Irreducible factors of f mod p with multiplicities, in branch order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.is_zero() or not f.is_monic():
        raise NotIntegral("polynomial must be monic")
    for c in f.coeffs:
        if Fraction(c).denominator % p == 0:
            raise NotIntegral(f"coefficient {c} is not {p}-integral")
    return ff_factor(FFPoly(prime_field(p), _integral_residues(f, p, p)), seed=seed)


def hensel_factor(f: Poly, p: int, N: int, seed: int = 0) -> list[PadicPoly]:
    """Monic factors of f mod p^N, one per group phi^k of f mod p."""
    groups = residual_groups(f, p, seed)
    M = p ** N
    rest = _integral_residues(f, p, M)
    out = []
    for i, (phi, k) in enumerate(groups):
        if i == len(groups) - 1:
            out.append(PadicPoly(p, N, tuple(rest)))
            break
        g0 = FFPoly(phi.field, phi.coeffs)
        grp = g0
        for _ in range(k - 1):
            grp = grp * g0
        co = FFPoly(prime_field(p), [c % p for c in rest]) // grp
        cof, grp_l = _lift_pair(rest, list(co.coeffs), list(grp.coeffs), p, N)
        out.append(PadicPoly(p, N, tuple(c % M for c in grp_l)))
        rest = [c % M for c in cof]
    return out


def max_precision_from_env(default: int = DEFAULT_MAX_PRECISION) -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return default
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ValueError(f"{PRECISION_ENV} must be positive")
    return n


class BranchOracle:
    """Reference valuation on Q[X]/(f) for one extension of v_p.

    ``branch`` indexes the coprime groups of f mod p in :func:`residual_groups`
    order. With a single group the factor is f itself and values are exact.
    """

    def __init__(
        self,
        p: int,
        minpoly: Poly,
        branch: int = 0,
        precision: int = DEFAULT_PRECISION,
        max_precision: int | None = None,
        seed: int = 0,
    ):
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        self.p = p
        self.minpoly = minpoly
        self.seed = seed
        self.groups = residual_groups(minpoly, p, seed)
        if not 0 <= branch < len(self.groups):
            raise BranchOutOfRange(f"branch {branch} not in range 0..{len(self.groups) - 1}")
        self.branch = branch
        phi, k = self.groups[branch]
        self.residual_factor = phi
        self.multiplicity = k
        self.local_degree = phi.degree * k
        self.precision = max(1, int(precision))
        self.max_precision = max_precision if max_precision is not None else max_precision_from_env()
        self._lock = threading.Lock()
        self._factors: dict[int, Poly] = {}
        self._values: dict[tuple, ExtendedValue] = {}

    @property
    def branch_count(self) -> int:
        return len(self.groups)

    @property
    def exact(self) -> bool:
        return len(self.groups) == 1

    def __repr__(self):
        return f"BranchOracle(p={self.p}, minpoly={self.minpoly}, branch={self.branch})"

    def factor(self, N: int) -> Poly:
        if self.exact:
            return self.minpoly
        with self._lock:
            hit = self._factors.get(N)
        if hit is None:
            hit = hensel_factor(self.minpoly, self.p, N, self.seed)[self.branch].to_poly()
            with self._lock:
                hit = self._factors.setdefault(N, hit)
        return hit

    def value(self, g: Poly) -> ExtendedValue:
        g = poly_rem(g, self.minpoly)
        if g.is_zero():
            return INF
        key = g.coeffs
        with self._lock:
            hit = self._values.get(key)
        if hit is not None:
            return hit
        v = self._compute(g)
        with self._lock:
            self._values[key] = v
        return v

    __call__ = value

    def _compute(self, g: Poly) -> ExtendedValue:
        p, D = self.p, self.local_degree
        c = poly_vp(g, p)
        g0 = g * (Fraction(p) ** -c)
        if self.exact:
            return c + Fraction(vp(resultant(self.minpoly, g0), p), D)
        N = self.precision
        prev = None
        while N <= self.max_precision:
            r = resultant(self.factor(N), g0)
            v = vp(r, p)
            if v is not INF and v < N:
                if prev == v:
                    return c + Fraction(v, D)
                prev = v
            else:
                prev = None
            N *= 2
        raise PrecisionExhausted(
            f"no stable value below precision {self.max_precision} for {g}"
        )

    def norm_valuation(self, g: Poly) -> ExtendedValue:
        """v_p of Res(F, g) itself (not divided by the local degree)."""
        v = self.value(g)
        return v if v is INF else v * self.local_degree
