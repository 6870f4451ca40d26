"""Finite fields F_p[z]/(mu) and polynomials over them.

Field elements are plain ints in [0, q): the base-p digits of an
element are its coefficients in the basis 1, z, z^2, .... An int below
p is therefore the same prime-field constant in every extension, which
makes embeddings of F_p trivial. Multiplication goes through exp/log
tables built at construction.

Factorization is squarefree decomposition, then distinct-degree, then
equal-degree splitting (Cantor-Zassenhaus with a seeded generator, and
the trace variant in characteristic 2). An exhaustive irreducibility
check is kept for cross-validation on small inputs.
"""

from __future__ import annotations

import itertools
import random
import threading
from typing import Iterable, Sequence

from .errors import NotIrreducible, ZeroDivisor, ZeroInput

MAX_FIELD_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _fp_polymulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """Product of digit vectors modulo the monic ``mod`` over F_p."""
    n = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            for j in range(n + 1):
                out[k - n + j] = (out[k - n + j] - c * mod[j]) % p
    out = out[:n] + [0] * max(0, n - len(out))
    return out


class FiniteField:
    """F_p[z]/(modulus) with ``modulus`` monic and irreducible over F_p."""

    def __init__(self, p: int, modulus: Sequence[int] = (0, 1)):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        mod = [int(c) % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree at least 1")
        self.p = p
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.order = p ** self.degree
        if self.order > MAX_FIELD_ORDER:
            raise ValueError(f"field of order {self.order} is too large")
        if self.degree > 1 and not ff_is_irreducible(FFPoly(prime_field(p), mod)):
            raise NotIrreducible(f"modulus {mod} is reducible over F_{p}")
        self._digits = [self._to_digits(a) for a in range(self.order)]
        self._build_tables()

    def _to_digits(self, a: int) -> tuple:
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _build_tables(self):
        q, p = self.order, self.p
        if q == 2:
            self._exp, self._log = [1, 1], {1: 0}
            return
        for g in range(2 if self.degree == 1 else p, q):
            gd = list(self._digits[g])
            exp = [1]
            cur = [1] + [0] * (self.degree - 1)
            for _ in range(q - 2):
                cur = _fp_polymulmod(cur, gd, self.modulus, p)
                v = self.from_digits(cur)
                if v == 1:
                    break
                exp.append(v)
            if len(exp) == q - 1:
                self._exp = exp + exp
                self._log = {v: i for i, v in enumerate(exp)}
                self.generator = g
                return
        raise NotIrreducible("no primitive element found")

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}; {_fmt_fp(self.modulus, 'z')})"

    def digits(self, a: int) -> tuple:
        return self._digits[a]

    def from_digits(self, ds: Iterable[int]) -> int:
        acc = 0
        for d in reversed(list(ds)):
            acc = acc * self.p + d % self.p
        return acc

    def from_int(self, n: int) -> int:
        """Image of an integer (prime-field element)."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return self.from_digits((x + y) % p for x, y in zip(self._digits[a], self._digits[b]))

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x % self.p for x in self._digits[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.degree == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisor("inverse of zero in a finite field")
        if self.degree == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if not a:
            return 0 if k else 1
        if self.degree == 1:
            return pow(a, k, self.p)
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def scale_int(self, n: int, a: int) -> int:
        return self.mul(n % self.p, a)

    def gen(self) -> int:
        """The class of z."""
        return self.p if self.degree > 1 else 0

    def elements(self) -> range:
        return range(self.order)

    def format(self, a: int, var: str = "z") -> str:
        if self.degree == 1:
            return str(a)
        return _fmt_fp(self._digits[a], var)


def _fmt_fp(ds: Sequence[int], var: str) -> str:
    terms = []
    for k in range(len(ds) - 1, -1, -1):
        c = ds[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


_prime_fields: dict[int, FiniteField] = {}
_cache_lock = threading.Lock()


def prime_field(p: int) -> FiniteField:
    with _cache_lock:
        F = _prime_fields.get(p)
    if F is None:
        F = FiniteField(p)
        with _cache_lock:
            F = _prime_fields.setdefault(p, F)
    return F


class FFPoly:
    """Polynomial over a :class:`FiniteField`, coefficients lowest first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        for c in cs:
            if not 0 <= c < field.order:
                raise ValueError(f"{c} is not an element of {field}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs):
        obj = cls.__new__(cls)
        while cs and cs[-1] == 0:
            cs.pop()
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, FFPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"FFPoly({self.field!r}, {self})"

    def __str__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = F.format(c)
            if F.degree > 1 and "+" in cs:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mono = "X" if k == 1 else f"X^{k}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return "+".join(terms)

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return FFPoly._raw(F, [F.add(x, y) for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self):
        F = self.field
        return FFPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return FFPoly._raw(F, [F.mul(c, other) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FFPoly._raw(F, [])
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return FFPoly._raw(F, out)

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisor("division by the zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            return FFPoly._raw(F, []), self
        inv = F.inv(b[-1])
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = F.mul(c, inv)
            q[k - db] = c
            for j in range(db + 1):
                if b[j]:
                    r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
        return FFPoly._raw(F, q), FFPoly._raw(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def monic(self) -> "FFPoly":
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no monic associate")
        return self * self.field.inv(self.lc)

    def derivative(self) -> "FFPoly":
        F = self.field
        return FFPoly._raw(F, [F.scale_int(i, c) for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, k: int, m: "FFPoly") -> "FFPoly":
        result = FFPoly.const(self.field, 1) % m
        base = self % m
        while k:
            if k & 1:
                result = (result * base) % m
            k >>= 1
            if k:
                base = (base * base) % m
        return result

    def map_coeffs(self, field: FiniteField, fn) -> "FFPoly":
        return FFPoly._raw(field, [fn(c) for c in self.coeffs])


def ff_gcd(a: FFPoly, b: FFPoly) -> FFPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def ff_xgcd(a: FFPoly, b: FFPoly) -> tuple[FFPoly, FFPoly, FFPoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    zero, one = FFPoly._raw(F, []), FFPoly.const(F, 1)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    u = F.inv(r0.lc)
    return r0 * u, s0 * u, t0 * u


def _pth_root(f: FFPoly) -> FFPoly:
    F = f.field
    p, q = F.p, F.order
    e = q // p
    return FFPoly._raw(F, [F.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)])


def _squarefree(f: FFPoly) -> list[tuple[FFPoly, int]]:
    out = []
    c = ff_gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = ff_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w, c, i = y, c // y, i + 1
    if c.degree > 0:
        p = f.field.p
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c).monic()))
    return out


def _frobenius_power(h: FFPoly, f: FFPoly) -> FFPoly:
    return h.pow_mod(h.field.order, f)


def _distinct_degree(f: FFPoly) -> list[tuple[int, FFPoly]]:
    F = f.field
    X = FFPoly.x(F)
    out = []
    h = X % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = _frobenius_power(h, f)
        g = ff_gcd(f, h - X)
        if g.degree > 0:
            out.append((d, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f.monic()))
    return out


def _random_poly(F: FiniteField, deg: int, rng: random.Random) -> FFPoly:
    return FFPoly._raw(F, [rng.randrange(F.order) for _ in range(deg)])


def _equal_degree(f: FFPoly, d: int, rng: random.Random) -> list[FFPoly]:
    if f.degree == d:
        return [f.monic()]
    F = f.field
    q = F.order
    while True:
        a = _random_poly(F, f.degree, rng)
        if a.degree < 1:
            continue
        if F.p == 2:
            k = (q.bit_length() - 1) * d
            b, t = a % f, a % f
            for _ in range(k - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.pow_mod((q ** d - 1) // 2, f) - FFPoly.const(F, 1)
        g = ff_gcd(f, b)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def ff_sort_key(g: FFPoly) -> tuple:
    """Degree first, then coefficients from the leading term down."""
    return (g.degree, tuple(reversed(g.coeffs)))


def ff_factor(g: FFPoly, seed: int = 0) -> list[tuple[FFPoly, int]]:
    """Monic irreducible factors with multiplicities, in :func:`ff_sort_key` order."""
    if g.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    if g.degree == 0:
        return []
    rng = random.Random(seed)
    found: dict[FFPoly, int] = {}
    for part, mult in _squarefree(g.monic()):
        for d, chunk in _distinct_degree(part):
            for fac in _equal_degree(chunk, d, rng):
                found[fac] = found.get(fac, 0) + mult
    return sorted(found.items(), key=lambda kv: ff_sort_key(kv[0]))


def ff_roots(g: FFPoly) -> list[int]:
    """Roots in the coefficient field, ascending."""
    F = g.field
    return sorted(F.neg(fac.coeffs[0]) for fac, _ in ff_factor(g) if fac.degree == 1)


def ff_is_irreducible(g: FFPoly) -> bool:
    """Rabin's test."""
    if g.is_zero():
        raise ZeroInput("zero polynomial")
    n = g.degree
    if n < 1:
        raise ValueError("constants are neither irreducible nor reducible")
    if n == 1:
        return True
    g = g.monic()
    X = FFPoly.x(g.field)
    powers = {}
    h = X % g
    for k in range(1, n + 1):
        h = _frobenius_power(h, g)
        powers[k] = h
    if powers[n] != X % g:
        return False
    for r in _prime_factors(n):
        if ff_gcd(g, powers[n // r] - X).degree > 0:
            return False
    return True


def monic_polys(F: FiniteField, degree: int):
    """All monic polynomials of the given degree over F."""
    for low in itertools.product(range(F.order), repeat=degree):
        yield FFPoly._raw(F, list(low) + [1])


def ff_is_irreducible_exhaustive(g: FFPoly) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    if g.is_zero():
        raise ZeroInput("zero polynomial")
    n = g.degree
    if n < 1:
        raise ValueError("constants are neither irreducible nor reducible")
    for d in range(1, n // 2 + 1):
        for h in monic_polys(g.field, d):
            if (g % h).is_zero():
                return False
    return True


_irreducibles: dict[tuple[int, int], tuple[int, ...]] = {}


def find_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree over F_p, in counting order."""
    key = (p, degree)
    with _cache_lock:
        hit = _irreducibles.get(key)
    if hit is not None:
        return hit
    Fp = prime_field(p)
    for n in range(p ** degree):
        low = []
        for _ in range(degree):
            n, r = divmod(n, p)
            low.append(r)
        cand = FFPoly._raw(Fp, low + [1])
        if (degree == 1 or low[0]) and ff_is_irreducible(cand):
            with _cache_lock:
                _irreducibles[key] = cand.coeffs
            return cand.coeffs
    raise NotIrreducible(f"no irreducible of degree {degree} over F_{p}")  # pragma: no cover


def solve_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of a square matrix over F_p."""
    n = len(rows)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            raise ZeroDivisor("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] % p:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
