"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest degree first. The zero polynomial has
degree -1. Text syntax: terms ``c*x^k``, ``x^k``, ``c`` joined by ``+``
and ``-``, with ``c`` an integer or a fraction ``a/b``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import NonMonicDivisor, ParseError, ZeroDivisor, ZeroInput

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    __slots__ = ("_c", "_h")

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self._c = tuple(cs)
        self._h = None

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else _ZERO

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return _ZERO

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self._c)
        return self._h

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._c])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Poly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if not self._c:
            return self
        return Poly([0] * k + list(self._c))

    def monic(self) -> "Poly":
        if not self._c:
            raise ZeroInput("zero polynomial has no monic associate")
        return self * (1 / self.lc)

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self._c):
            acc = acc * other + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self._c)][1:])


def _divmod_field(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Division over Q by any nonzero divisor."""
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    gc = g.coeffs
    inv = 1 / gc[-1]
    if len(r) - 1 < dg:
        return Poly(), f
    q = [_ZERO] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c * inv
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] -= c * gc[j]
    return Poly(q), Poly(r[:dg])


def euclid_div(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of f by a monic g."""
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if g.lc != 1:
        raise NonMonicDivisor(f"divisor {g} is not monic")
    return _divmod_field(f, g)


def poly_rem(f: Poly, g: Poly) -> Poly:
    return _divmod_field(f, g)[1]


def phi_expand(f: Poly, phi: Poly) -> list[Poly]:
    """Coefficients [f0, f1, ...] with f = sum fi*phi^i and deg fi < deg phi.

    The zero polynomial expands to the empty list.
    """
    if phi.is_zero():
        raise ZeroDivisor("expansion in powers of zero")
    if phi.lc != 1:
        raise NonMonicDivisor(f"{phi} is not monic")
    if phi.degree < 1:
        raise ValueError("expansion base must have degree at least 1")
    out = []
    while not f.is_zero():
        f, r = _divmod_field(f, phi)
        out.append(r)
    return out


def phi_combine(parts: Sequence[Poly], phi: Poly) -> Poly:
    acc = Poly()
    for c in reversed(parts):
        acc = acc * phi + c
    return acc


def resultant(f: Poly, g: Poly) -> Fraction:
    """Res(f, g) by the Euclidean recursion over Q."""
    if f.is_zero() or g.is_zero():
        raise ZeroInput("resultant with the zero polynomial")
    acc = _ONE
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return acc * g.lc ** m
        if m == 0:
            return acc * f.lc ** n
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r) with r = f mod g
        r = _divmod_field(f, g)[1]
        if r.is_zero():
            return _ZERO
        if (m * n) & 1:
            acc = -acc
        acc *= g.lc ** (m - r.degree)
        f, g = g, r


def divided_derivative(f: Poly, i: int) -> Poly:
    """(1/i!) times the i-th derivative, computed with binomial coefficients."""
    if i < 0:
        raise ValueError("order must be non-negative")
    return Poly([comb(k, i) * c for k, c in enumerate(f.coeffs)][i:])


_NUM = r"\d+(?:/\d+)?"
_TERM_RE = re.compile(
    rf"(?P<coef>{_NUM})?(?:(?P<star>\*)?(?P<var>[A-Za-z])(?:(?:\^|\*\*)(?P<exp>\d+))?)?"
)


def parse_poly(text: str) -> Poly:
    """Parse ``x^6+3*x^5-1/2*x+9`` style text exactly."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    var = None
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos:
            raise ParseError(f"expected '+' or '-' at position {pos} in {text!r}")
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse term at position {pos} in {text!r}")
        coef, star, v, exp = m.group("coef", "star", "var", "exp")
        if star and not (coef and v):
            raise ParseError(f"dangling '*' in {text!r}")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ParseError(f"mixed variables {var!r} and {v!r}")
            k = int(exp) if exp is not None else 1
        else:
            k = 0
        try:
            c = Fraction(coef) if coef is not None else _ONE
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {text!r}") from exc
        coeffs[k] = coeffs.get(k, _ZERO) + sign * c
        pos = m.end()
    if not coeffs:
        raise ParseError(f"no terms in {text!r}")
    deg = max(coeffs)
    return Poly([coeffs.get(k, _ZERO) for k in range(deg + 1)])


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = _fmt_coef(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_fmt_coef(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def poly_inverse_mod(a: Poly, f: Poly) -> Poly:
    """The inverse of a in Q[X]/(f); a and f must be coprime."""
    r0, r1 = f, poly_rem(a, f)
    s0, s1 = Poly(), Poly.const(1)
    while not r1.is_zero():
        q, r = _divmod_field(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisor(f"{a} is not invertible modulo {f}")
    return poly_rem(s0 * (1 / r0.lc), f)
