# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# classical_sphere.py - The K(1)-local stems of S and of the exotic element T
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 20-Sep-2026   gsd 0.1 Groups S_{n,e} and named bases
# 21-Sep-2026   gsd 0.2 Products, Picard classes, attaching maps
#
"""pi_* S and pi_* T with the named generators 1, g, rho_x, mu_x, xi_x.

Indices x run over (1/2)Z; a generator indexed by x lives in twist x mod 1
(twist 1/2 means pi_* T). Nonzero groups sit in stems 8x-1 through 8x+3,
plus the unit 1 in stem 0 and g in stem 0 of T.
"""
import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import List, Optional, Tuple

from .exceptions import InvalidValueException, UnspecifiedProductException, VerificationFailure
from .ko_ring import d3, e2_class
from .ku_ring import ku_monomial
from .modlin import FGModule
from .twoadic import INFINITY, j, residue

logger = logging.getLogger("greensphere")

HALF = Fraction(1, 2)

# kind -> (stem offset from 8x, number of mu_0 factors, carrier)
KINDS = {
    'rho': (-1, 0, 'rho'),
    'mu0rho': (0, 1, 'rho'),
    'mu': (1, 0, 'mu'),
    'mu0sqrho': (1, 2, 'rho'),
    'mu0mu': (2, 1, 'mu'),
    'xi': (3, 0, 'xi'),
}
# order of kinds inside one group: free summands before torsion
_ORDER = ('1', 'g', 'rho', 'xi', 'mu0rho', 'mu', 'mu0sqrho', 'mu0mu')


def _frac(x) -> Fraction:
    return Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator)


def check_twist(eps) -> Fraction:
    eps = Fraction(eps)
    if eps not in (0, HALF):
        raise InvalidValueException(f'twist {eps} is not 0 or 1/2')
    return eps


def _index_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'


@dataclass(frozen=True)
class SBasis:
    """A named generator of S_{n,e}: kind '1', 'g' or one of KINDS at index x"""
    kind: str
    x: Fraction = Fraction(0)

    @property
    def stem(self) -> int:
        if self.kind in ('1', 'g'):
            return 0
        return int(8 * self.x) + KINDS[self.kind][0]

    @property
    def twist(self) -> Fraction:
        return HALF if self.kind == 'g' else _frac(self.x)

    def exponent(self):
        """log_2 of the order; INFINITY for Z_2"""
        if self.kind in ('1', 'g'):
            return INFINITY
        if self.kind == 'rho':
            return j(int(2 * self.x))
        if self.kind == 'xi':
            return j(int(2 * self.x + 1))
        return 1

    @property
    def name(self) -> str:
        if self.kind in ('1', 'g'):
            return self.kind
        i = _index_str(self.x)
        return {'rho': f'ρ_{i}', 'mu0rho': f'μ₀ρ_{i}', 'mu': f'μ_{i}', 'mu0sqrho': f'μ₀²ρ_{i}',
                'mu0mu': f'μ₀μ_{i}', 'xi': f'ξ_{i}'}[self.kind]

    @property
    def ascii(self) -> str:
        """The name in the generator grammar, e.g. mu[0]*rho[1/2]"""
        if self.kind in ('1', 'g'):
            return self.kind
        _, mus, carrier = KINDS[self.kind]
        return '*'.join(['mu[0]'] * mus + [f'{carrier}[{_index_str(self.x)}]'])

    def factors(self) -> List[Tuple[str, Fraction]]:
        """The generator as a product of g, rho_x, mu_x, xi_x"""
        if self.kind == '1':
            return []
        if self.kind == 'g':
            return [('g', Fraction(0))]
        _, mus, carrier = KINDS[self.kind]
        return [('mu', Fraction(0))] * mus + [(carrier, self.x)]


def s_basis(n: int, eps=0) -> Tuple[SBasis, ...]:
    eps = check_twist(eps)
    out = []
    if n == 0:
        out.append(SBasis('g') if eps else SBasis('1'))
    for kind, (offset, _, _) in KINDS.items():
        x = Fraction(n - offset, 8)
        if x.denominator <= 2 and _frac(x) == eps:
            out.append(SBasis(kind, x))
    out.sort(key=lambda b: _ORDER.index(b.kind))
    return tuple(out)


def s_group(n: int, eps=0) -> FGModule:
    basis = s_basis(n, eps)
    free = [b for b in basis if b.exponent() == INFINITY]
    tors = [b for b in basis if b.exponent() != INFINITY]
    return FGModule(free_rank=len(free), torsion=tuple(b.exponent() for b in tors),
                    basis_names=tuple(b.name for b in free + tors))


@dataclass(frozen=True)
class SElement:
    stem: int
    twist: Fraction
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        twist = check_twist(self.twist)
        basis = s_basis(self.stem, twist)
        if len(self.coeffs) != len(basis):
            raise InvalidValueException(f'{len(self.coeffs)} coefficients for S_({self.stem},{twist})')
        coeffs = []
        for x, b in zip(self.coeffs, basis):
            e = b.exponent()
            coeffs.append(Fraction(x) if e == INFINITY else Fraction(residue(x, e)))
        object.__setattr__(self, 'twist', twist)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @staticmethod
    def zero(stem: int, twist=0) -> 'SElement':
        return SElement(stem, Fraction(twist), (0,) * len(s_basis(stem, twist)))

    @staticmethod
    def of(basis: SBasis, coeff=1) -> 'SElement':
        names = s_basis(basis.stem, basis.twist)
        return SElement(basis.stem, basis.twist, tuple(coeff if b == basis else 0 for b in names))

    @property
    def basis(self) -> Tuple[SBasis, ...]:
        return s_basis(self.stem, self.twist)

    def terms(self) -> List[Tuple[Fraction, SBasis]]:
        return [(x, b) for x, b in zip(self.coeffs, self.basis) if x]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: 'SElement') -> 'SElement':
        if (self.stem, self.twist) != (other.stem, other.twist):
            raise InvalidValueException(f'adding S_({self.stem},{self.twist}) and S_({other.stem},{other.twist})')
        return SElement(self.stem, self.twist, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'SElement') -> 'SElement':
        return self + other.scale(-1)

    def scale(self, x) -> 'SElement':
        return SElement(self.stem, self.twist, tuple(Fraction(x) * a for a in self.coeffs))

    def __str__(self):
        terms = self.terms()
        return ' + '.join(b.name if x == 1 else f'{x}·{b.name}' for x, b in terms) or '0'

    @property
    def ascii(self) -> str:
        parts = []
        for x, b in self.terms():
            if b.kind == '1':
                parts.append(str(x))
            else:
                parts.append(b.ascii if x == 1 else f'{x}*{b.ascii}')
        text = ' + '.join(parts)
        return text.replace('+ -', '- ') or '0'


def rho(x) -> SElement:
    return SElement.of(SBasis('rho', Fraction(x)))


def mu(x) -> SElement:
    return SElement.of(SBasis('mu', Fraction(x)))


def xi(x) -> SElement:
    return SElement.of(SBasis('xi', Fraction(x)))


def one() -> SElement:
    return SElement.of(SBasis('1'))


def g() -> SElement:
    return SElement.of(SBasis('g'))


def _monomial(factors: List[Tuple[str, Fraction]], stem: int, twist: Fraction) -> SElement:
    """Reduce a product of generators to a multiple of one basis element"""
    zero = SElement.zero(stem, twist)
    if not s_basis(stem, twist):
        return zero
    coeff = 1
    gs = sum(1 for f, _ in factors if f == 'g')
    rest = [(f, x) for f, x in factors if f != 'g']
    mus = [x for f, x in rest if f == 'mu']
    carriers = [(f, x) for f, x in rest if f != 'mu']
    coeff *= 4 ** (gs // 2)
    if gs % 2:
        if mus:
            return zero
        if not carriers:
            return SElement.of(SBasis('g'), coeff)
        if len(carriers) > 1:
            return zero
        f, x = carriers[0]
        # g rho_x = 2 xi_(x-1/2), g xi_x = 2 rho_(x+1/2)
        carriers = [('xi', x - HALF)] if f == 'rho' else [('rho', x + HALF)]
        coeff *= 2
    if len(carriers) > 1:
        return zero
    total = sum(mus, Fraction(0))
    m = len(mus)
    if (stem, twist) == (0, HALF):
        raise UnspecifiedProductException(f'product of {factors} in pi_0 T is not determined by the stated relations')
    if carriers:
        f, x = carriers[0]
        x += total
        if f == 'rho' and m <= 2:
            return SElement.of(SBasis(('rho', 'mu0rho', 'mu0sqrho')[m], x), coeff)
        if f == 'xi' and m == 0:
            return SElement.of(SBasis('xi', x), coeff)
        # mu_0^3 = 4 xi_0 and rho xi = xi xi = 0
        return zero
    if m == 0:
        return SElement.of(SBasis('1'), coeff)
    if m == 1:
        return SElement.of(SBasis('mu', total), coeff)
    if m == 2:
        return SElement.of(SBasis('mu0mu', total), coeff)
    if m == 3:
        return SElement.of(SBasis('xi', total), coeff * _pow2(j(int(2 * total + 1))))
    return zero


def s_multiply(x: SElement, y: SElement) -> SElement:
    stem = x.stem + y.stem
    twist = _frac(x.twist + y.twist)
    out = SElement.zero(stem, twist)
    for a, p in x.terms():
        for b, q in y.terms():
            out = out + _monomial(p.factors() + q.factors(), stem, twist).scale(a * b)
    return out


# --------------
# Picard classes
# --------------

class PicardClass(IntEnum):
    S = 0
    T = 1

    def __mul__(self, other: 'PicardClass') -> 'PicardClass':
        return PicardClass(int(self) ^ int(other))

    @property
    def twist(self) -> Fraction:
        return HALF if self == PicardClass.T else Fraction(0)


def picard_from_d3(n: int) -> PicardClass:
    """S when rho beta^(n+1) tau^-2(n+1) is a d3-cycle, otherwise T"""
    if n % 2:
        t, a = 'rho', (n + 1) // 2
    else:
        t, a = 'eta', n // 2
    # the generator sits in coweight 0, so b = -a
    cls = e2_class(t, a, -a)
    detecting = ku_monomial(n + 1, -(n + 1), 1)
    if cls.s != detecting.s or cls.c != detecting.c:
        raise VerificationFailure(message=f'generator of KU^0 P_{2 * n + 1} misplaced at ({cls.s},{cls.c})')
    return PicardClass.S if d3(cls).is_zero() else PicardClass.T


def picard_class(w: int) -> PicardClass:
    """The class of P_w for odd w = 2n+1, checked against d3"""
    if w % 2 == 0:
        raise InvalidValueException(f'P_{w} is not an odd stunted projective spectrum')
    n = (w - 1) // 2
    looked_up = PicardClass.S if n % 4 in (0, 3) else PicardClass.T
    computed = picard_from_d3(n)
    if looked_up != computed:
        raise VerificationFailure(message=f'P_{w}: lookup gives {looked_up.name}, d3 gives {computed.name}')
    return looked_up


# --------------
# Attaching maps
# --------------

@dataclass(frozen=True)
class AttachingMap:
    """coeff * generator, times an undetermined unit when ``unit`` is set"""
    n: int
    side: str
    element: Optional[SElement]
    unit: bool = False

    @property
    def twist(self) -> Fraction:
        return self.element.twist if self.element is not None else Fraction(0)

    def is_zero(self) -> bool:
        return self.element is None or self.element.is_zero()

    def __str__(self):
        if self.is_zero():
            return '0'
        return f'(unit)·{self.element}' if self.unit else str(self.element)


def _pow2(e) -> int:
    return 0 if e == INFINITY else 2 ** (e - 1)


def attaching_map(n: int, side: str = 'first') -> AttachingMap:
    """Attaching map of P_2n as a 2-cell complex via S^2n -> P_2n -> P_2n+1 ('first')
    or S^2n-1 -> P_2n-1 -> P_2n ('second')
    """
    if side not in ('first', 'second'):
        raise InvalidValueException(f'unknown cofibering {side}')
    if n == 0:
        return AttachingMap(n, side, None)
    if side == 'first':
        c, r = divmod(n + 3, 4)     # n = 4c - (3 - r)
        r = 3 - r
        if r == 0:
            elt = rho(-c).scale(_pow2(j(-2 * c)))
            unit = False
        elif r == 1:
            elt, unit = mu(-c), True
        elif r == 2:
            elt, unit = rho(-c + HALF).scale(4), False
        else:
            elt, unit = mu(-c + HALF), True
        target = picard_class(2 * n + 1)
    else:
        c, r = divmod(n, 4)
        if r == 0:
            elt, unit = rho(c).scale(_pow2(j(2 * c))), False
        elif r == 1:
            elt, unit = mu(c), True
        elif r == 2:
            elt, unit = rho(c + HALF).scale(4), False
        else:
            elt, unit = mu(c + HALF), True
        target = picard_class(2 * n - 1)
    amap = AttachingMap(n, side, elt, unit)
    if amap.twist != target.twist:
        raise VerificationFailure(message=f'attaching map of P_{2 * n} lies in twist {amap.twist}, '
                                          f'but the cofiber is {target.name}')
    if amap.is_zero() or not elt.scale(2).is_zero():
        raise VerificationFailure(message=f'attaching map {amap} of P_{2 * n} is not simple 2-torsion')
    return amap
