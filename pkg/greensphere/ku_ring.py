# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# ku_ring.py - Borel K-theory ring with Adams operations and rho-towers
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 05-Sep-2026   gsd 0.1 Monomials beta^i tau^2j rho^m, canonical basis
# 08-Sep-2026   gsd 0.2 psi^k, rho action, finite stunted complexes
# 18-Oct-2026   gsd 0.3 Drop ku_reduced_order, orders are checked on the KO side
#
"""The ring Z_2[beta^+-1, tau^+-2, rho]/(rho h), h = 2 - z, z = rho^2 tau^-2 beta.

A monomial (i, j, m) is beta^i tau^2j rho^m in bidegree s = 2i - m,
c = 2i + 2j. In bidegree (s, c) with c even the canonical basis is the single
monomial with m = 1 (s odd) or the two monomials with m = 0, 2 (s even).
Higher rho powers are rewritten by rho^m X = 2 rho^(m-2) tau^2 beta^-1 X for
m >= 3, which is the relation 2 rho X = rho^3 tau^-2 beta X read backwards.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .exceptions import InvalidValueException
from .modlin import FGModule, ModuleMap, cokernel, from_columns, kernel

BETA = 'β'
TAU = 'τ'
RHO = 'ρ'


@dataclass(frozen=True, order=True)
class KUMonomial:
    i: int          # beta exponent
    j: int          # tau^2 exponent
    m: int          # rho exponent

    def __post_init__(self):
        if self.m < 0:
            raise InvalidValueException(f'negative rho exponent {self.m}')

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (2 * self.i - self.m, 2 * self.i + 2 * self.j)

    def canonical(self) -> Tuple[int, 'KUMonomial']:
        """(coefficient, basis monomial) equal to this monomial"""
        coeff, i, jj, m = 1, self.i, self.j, self.m
        while m >= 3:
            coeff, i, jj, m = 2 * coeff, i - 1, jj + 1, m - 2
        return coeff, KUMonomial(i, jj, m)

    def __mul__(self, other: 'KUMonomial') -> 'KUMonomial':
        return KUMonomial(self.i + other.i, self.j + other.j, self.m + other.m)

    def __str__(self):
        parts = []
        for sym, e in ((RHO, self.m), (BETA, self.i), (TAU, 2 * self.j)):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f'{sym}^{e}')
        return '·'.join(parts) or '1'


def ku_basis(s: int, c: int) -> List[KUMonomial]:
    """Canonical basis of pi_{s,c} b(KU)"""
    if c % 2:
        return []
    if s % 2:
        i = (s + 1) // 2
        return [KUMonomial(i, c // 2 - i, 1)]
    i = s // 2
    return [KUMonomial(i, c // 2 - i, 0), KUMonomial(i + 1, c // 2 - i - 1, 2)]


def ku_group(s: int, c: int) -> FGModule:
    basis = ku_basis(s, c)
    return FGModule(free_rank=len(basis), basis_names=tuple(str(b) for b in basis))


@dataclass(frozen=True)
class KUElement:
    s: int
    c: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(x) for x in self.coeffs)
        if len(coeffs) != len(ku_basis(self.s, self.c)):
            raise InvalidValueException(f'{len(coeffs)} coefficients in bidegree ({self.s},{self.c})')
        object.__setattr__(self, 'coeffs', coeffs)

    @staticmethod
    def zero(s: int, c: int) -> 'KUElement':
        return KUElement(s, c, (0,) * len(ku_basis(s, c)))

    @staticmethod
    def from_monomial(mono: KUMonomial, coeff=1) -> 'KUElement':
        s, c = mono.bidegree
        k, base = mono.canonical()
        basis = ku_basis(s, c)
        return KUElement(s, c, tuple(Fraction(coeff) * k if b == base else 0 for b in basis))

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.s, self.c)

    def terms(self) -> List[Tuple[Fraction, KUMonomial]]:
        return [(x, b) for x, b in zip(self.coeffs, ku_basis(self.s, self.c)) if x]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: 'KUElement') -> 'KUElement':
        if self.bidegree != other.bidegree:
            raise InvalidValueException(f'adding bidegrees {self.bidegree} and {other.bidegree}')
        return KUElement(self.s, self.c, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'KUElement') -> 'KUElement':
        return self + other.scale(-1)

    def scale(self, x) -> 'KUElement':
        return KUElement(self.s, self.c, tuple(Fraction(x) * a for a in self.coeffs))

    def __str__(self):
        terms = self.terms()
        if not terms:
            return '0'
        return ' + '.join(str(b) if x == 1 else f'{x}·{b}' for x, b in terms)


def ku_monomial(i: int, j: int, m: int, coeff=1) -> KUElement:
    return KUElement.from_monomial(KUMonomial(i, j, m), coeff)


ONE = KUMonomial(0, 0, 0)
RHO_MONO = KUMonomial(0, 0, 1)
Z_MONO = KUMonomial(1, -1, 2)


def h_element() -> KUElement:
    """h = 2 - z in pi_{0,0}"""
    return ku_monomial(0, 0, 0, 2) - ku_monomial(1, -1, 2)


def ku_multiply(x: KUElement, y: KUElement) -> KUElement:
    s, c = x.s + y.s, x.c + y.c
    out: Dict[KUMonomial, Fraction] = {}
    for a, ma in x.terms():
        for b, mb in y.terms():
            k, base = (ma * mb).canonical()
            out[base] = out.get(base, Fraction(0)) + a * b * k
    return KUElement(s, c, tuple(out.get(b, 0) for b in ku_basis(s, c)))


def _check_odd(k: int):
    if k % 2 == 0:
        raise InvalidValueException(f'Adams operation psi^{k} needs odd k')


def ku_psi(k: int, x: KUElement) -> KUElement:
    """psi^k: beta^i -> k^i beta^i, tau^2j -> tau^2j (1 + (k^j - 1)/2 z), rho -> rho"""
    _check_odd(k)
    out = KUElement.zero(x.s, x.c)
    kk = Fraction(k)
    for a, mono in x.terms():
        if mono.m >= 1:
            # rho z = 2 rho
            out = out + KUElement.from_monomial(mono, a * kk ** (mono.i + mono.j))
        else:
            out = out + KUElement.from_monomial(mono, a * kk ** mono.i)
            out = out + KUElement.from_monomial(mono * Z_MONO, a * kk ** mono.i * (kk ** mono.j - 1) / 2)
    return out


def sigma(x: KUElement) -> KUElement:
    """The C_2 action, psi^-1"""
    return ku_psi(-1, x)


def ku_rho_action(x: KUElement) -> KUElement:
    return ku_multiply(x, KUElement.from_monomial(RHO_MONO))


def _matrix(images: List[KUElement], s: int, c: int):
    return from_columns([img.coeffs for img in images], len(ku_basis(s, c)))


def ku_psi_map(k: int, s: int, c: int) -> ModuleMap:
    basis = ku_basis(s, c)
    images = [ku_psi(k, KUElement.from_monomial(b)) for b in basis]
    g = ku_group(s, c)
    return ModuleMap(g, g, tuple(tuple(r) for r in _matrix(images, s, c)))


def ku_rho_power_images(power: int, s: int, c: int) -> List[KUElement]:
    """Images of the basis of pi_{s+power,c} under rho^power"""
    rho_p = KUElement.from_monomial(KUMonomial(0, 0, power))
    return [ku_multiply(KUElement.from_monomial(b), rho_p) for b in ku_basis(s + power, c)]


def ku_finite_stunted(s: int, c: int, n: int) -> Tuple[FGModule, FGModule]:
    """Cokernel of rho^(n+1) into pi_{s,c} and kernel of rho^(n+1) on pi_{s+n,c-1}.

    These are the two ends of the long exact sequence computing pi_{s,c} of
    b(KU) smashed with the cofiber of rho^(n+1).
    """
    if n < 0:
        raise InvalidValueException(f'stunted complex with n = {n} < 0')
    images = ku_rho_power_images(n + 1, s, c)
    dim = len(ku_basis(s, c))
    coker = cokernel(_matrix(images, s, c), dim, len(images)) if dim else FGModule()
    kimages = ku_rho_power_images(n + 1, s - 1, c - 1)
    kdim = len(ku_basis(s + n, c - 1))
    if kdim and kimages[0].coeffs:
        ker = FGModule(free_rank=len(kernel(_matrix(kimages, s - 1, c - 1), kdim)))
    else:
        ker = FGModule(free_rank=kdim)
    return coker, ker
