"""Exact values: rationals, the extended set Q ∪ {∞}, and value groups (1/e)Z.

Rationals are :class:`fractions.Fraction`. The infinite value is the
singleton :data:`INF`, which compares above every rational and absorbs
addition. A rank-one value group containing 1 is always of the form
(1/e)Z, so it is stored by its denominator e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Union

from .errors import NotASubgroup

Rational = Fraction


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("artifact.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("-inf is not a value")


INF = _Infinity()

ExtendedValue = Union[Fraction, _Infinity]


def is_inf(v) -> bool:
    return v is INF


def as_value(x) -> ExtendedValue:
    """Coerce ints, strings ('inf', '2/3') and Fractions to an extended value."""
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def val_min_add(a: ExtendedValue, b: ExtendedValue, mode: str) -> ExtendedValue:
    if mode == "min":
        return a if a <= b else b
    if mode == "add":
        if a is INF or b is INF:
            return INF
        return a + b
    raise ValueError(f"unknown mode {mode!r}")


def value_to_json(v: ExtendedValue):
    if v is INF:
        return "inf"
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


@dataclass(frozen=True)
class ValueGroup:
    """The subgroup (1/e)Z of Q."""

    e: int

    def __post_init__(self):
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError("value group denominator must be a positive integer")

    @classmethod
    def generated_by(cls, values: Iterable) -> "ValueGroup":
        """Smallest (1/e)Z containing 1 and every finite value given."""
        e = 1
        for v in values:
            if v is INF:
                continue
            e = lcm(e, Fraction(v).denominator)
        return cls(e)

    def __contains__(self, v) -> bool:
        if v is INF:
            return False
        return self.e % Fraction(v).denominator == 0

    def join(self, other: "ValueGroup") -> "ValueGroup":
        return ValueGroup(lcm(self.e, other.e))


def group_index(sub: ValueGroup, sup: ValueGroup) -> int:
    if sup.e % sub.e:
        raise NotASubgroup(f"(1/{sub.e})Z is not contained in (1/{sup.e})Z")
    return sup.e // sub.e
