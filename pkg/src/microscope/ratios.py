"""Exact scalar values used for contraction ratios and target dimensions.

Geometry in this library is rational, but natural constructions call for
numbers like 2**(-5/2) (a contraction ratio with prescribed similarity
dimension) or log 2 / log 3 (a target dimension).  Both kinds are kept
symbolically so that log-arithmetic stays exact; a rational approximation
is produced only when cube geometry actually needs one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for non-negative integer n, integer k >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 1 or n in (0, 1):
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True)
class PowerRatio:
    """The positive real base ** exponent, base an integer >= 2."""

    base: int
    exponent: Fraction

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    def __float__(self) -> float:
        return float(self.base) ** float(self.exponent)

    def as_fraction(self, bits: int = 128) -> Fraction:
        """Rational approximation accurate to about 2**-bits relative error."""
        p, q = self.exponent.numerator, self.exponent.denominator
        if q == 1:
            return Fraction(self.base) ** p
        if p >= 0:
            r = integer_root(self.base ** p << (bits * q), q)
            return Fraction(r, 1 << bits)
        r = integer_root(self.base ** (-p) << (bits * q), q)
        # r ~ base**(-p/q) * 2**bits, so the reciprocal scaled back
        return Fraction(1 << bits, r)


@dataclass(frozen=True)
class LogRatio:
    """The number log(num) / log(den); e.g. LogRatio(2, 3) for the
    similarity dimension of the middle-thirds set."""

    num: int
    den: int

    def __post_init__(self):
        if self.num < 1 or self.den < 2:
            raise ValueError("need num >= 1 and den >= 2")

    def __float__(self) -> float:
        return math.log(self.num) / math.log(self.den)


Ratio = Union[Fraction, PowerRatio]
DimValue = Union[Fraction, LogRatio]


def ratio_float(r: Ratio) -> float:
    return float(r)


def ratio_as_fraction(r: Ratio, bits: int = 128) -> Fraction:
    """Exact value for Fraction inputs, high-precision rational otherwise."""
    if isinstance(r, Fraction):
        return r
    return r.as_fraction(bits)


def exact_power_of(value: int, base: int) -> int | None:
    """Return t with base**t == value, or None."""
    if value < 1 or base < 2:
        return None
    t = 0
    v = value
    while v % base == 0:
        v //= base
        t += 1
    return t if v == 1 else None


def dim_to_fraction(s: float | int | str | DimValue) -> DimValue:
    """Normalise a user-facing dimension value.

    Floats convert exactly via their binary expansion, so converting back
    to float is the identity.  Strings accept 'p/q' forms.  LogRatio passes
    through untouched.
    """
    if isinstance(s, LogRatio):
        return s
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        return Fraction(s)
    return Fraction(s)


def dim_float(s: DimValue) -> float:
    return float(s)
