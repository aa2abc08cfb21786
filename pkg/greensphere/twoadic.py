# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# twoadic.py - Exact 2-local scalars and the number functions j, u, gamma
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 03-Sep-2026   gsd 0.1 Scalar over Fraction, val2, j, u, gamma
# 17-Sep-2026   gsd 0.2 Certify u at the working precision
#
"""Exact 2-local arithmetic.

A 2-adic integer that arises from a closed formula is always a rational number
with odd denominator here, so :class:`Scalar` keeps it as an exact
:class:`fractions.Fraction` and only reduces modulo ``2^N`` when asked for a
residue. ``2^INFINITY`` is 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .config import Config
from .exceptions import InvalidValueException, PrecisionExhaustedException, VerificationFailure

INFINITY = float('inf')

ExtNat = Union[int, float]       # a nonnegative int or INFINITY
Number = Union[int, Fraction, 'Scalar']


def val2(n: Union[int, Fraction]) -> int:
    """2-adic valuation of a nonzero integer or fraction"""
    if n == 0:
        raise InvalidValueException('val2 of 0 is undefined')
    if isinstance(n, Fraction):
        return val2(n.numerator) - val2(n.denominator)
    n = abs(int(n))
    return (n & -n).bit_length() - 1


def pow2(e: ExtNat) -> Fraction:
    """2^e as a Fraction, with 2^INFINITY = 0"""
    if e == INFINITY:
        return Fraction(0)
    e = int(e)
    return Fraction(2 ** e) if e >= 0 else Fraction(1, 2 ** -e)


def j(a: int) -> ExtNat:
    """Three more than the 2-adic valuation of a, INFINITY at 0.
    Z_2/(2^j(a)) is Z_2/(8a).
    """
    if a == 0:
        return INFINITY
    return 3 + val2(a)


def two_integral(x: Fraction) -> bool:
    return x.denominator % 2 == 1


def residue(x: Union[int, Fraction], e: int) -> int:
    """x modulo 2^e in [0, 2^e) for a 2-adic integer x"""
    x = Fraction(x)
    if not two_integral(x):
        raise InvalidValueException(f'{x} is not a 2-adic integer')
    m = 1 << e
    return (x.numerator * pow(x.denominator, -1, m)) % m


def check_generator(k: int) -> int:
    """k must be odd and project to a generator of Z_2^x/{+-1}"""
    if k % 2 == 0:
        raise InvalidValueException(f'k = {k} is even')
    if k % 8 not in (3, 5):
        raise InvalidValueException(f'k = {k} is not +-3 mod 8')
    return k


@dataclass(frozen=True)
class Scalar:
    """Exact element of Z_(2), reduced mod 2^N only on request"""
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if not two_integral(v):
            raise InvalidValueException(f'{v} is not a 2-adic integer')
        object.__setattr__(self, 'value', v)

    @staticmethod
    def of(x: Number) -> 'Scalar':
        return x if isinstance(x, Scalar) else Scalar(Fraction(x))

    def residue(self, precision: int = None) -> int:
        return residue(self.value, precision or Config.precision)

    def valuation(self, precision: int = None) -> ExtNat:
        """Exact valuation; PrecisionExhaustedException when it is not below N"""
        precision = precision or Config.precision
        if self.value == 0:
            return INFINITY
        v = val2(self.value)
        if v >= precision:
            raise PrecisionExhaustedException(f'valuation {v} not below precision {precision}')
        return v

    def is_unit(self) -> bool:
        return self.value != 0 and val2(self.value) == 0

    def __add__(self, other):
        return Scalar(self.value + Scalar.of(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - Scalar.of(other).value)

    def __rsub__(self, other):
        return Scalar(Scalar.of(other).value - self.value)

    def __mul__(self, other):
        return Scalar(self.value * Scalar.of(other).value)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.value == other
        if isinstance(other, Scalar):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


@lru_cache(maxsize=4096)
def _u(a: int, b: int, k: int, precision: int) -> Fraction:
    if a == 0 or a == b:
        return Fraction(1)
    num = Fraction(k) ** (2 * b) - Fraction(k) ** (2 * a)
    den = Fraction(k) ** (2 * a) - 1
    if val2(num) >= precision or val2(den) >= precision:
        raise PrecisionExhaustedException(f'u({a},{b}) needs more than {precision} bits')
    value = pow2(j(a) - j(b - a)) * num / den
    if val2(value) != 0:
        raise VerificationFailure(message=f'u({a},{b}) = {value} is not a 2-adic unit')
    return value


def u(a: int, b: int, k: int = None) -> Scalar:
    """The unit 2^(j_a - j_(b-a)) (k^2b - k^2a)/(k^2a - 1); 1 when a = 0 or a = b"""
    k = check_generator(Config.k if k is None else k)
    return Scalar(_u(a, b, k, Config.precision))


def gamma(n: int) -> int:
    """Number of 0 < m <= n with m = 0, 1, 2, 4 mod 8"""
    if n < 0:
        raise InvalidValueException(f'gamma of negative n = {n}')
    full, rest = divmod(n, 8)
    return 4 * full + sum(1 for m in range(1, rest + 1) if m % 8 in (1, 2, 4))


def james_period(n: int) -> int:
    """2^gamma(n), the period of stunted projective spectra with n+1 cells"""
    return 2 ** gamma(n)
