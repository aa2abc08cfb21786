# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# ko_ring.py - Real K-theory as homotopy fixed points of the KU descent
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 11-Sep-2026   gsd 0.1 E2 page from C_2 cohomology, closed form check
# 13-Sep-2026   gsd 0.2 d3, E4, assembled groups with named bases
# 17-Sep-2026   gsd 0.3 Products with hidden extensions, psi^k, rho divisibility
# 19-Sep-2026   gsd 0.4 Stunted projective spectra through the rho sequence
# 18-Oct-2026   gsd 0.5 ko_rho_images for the descent rank profile
#
"""pi_{s,c} b(KO) computed from H^*(C_2; pi b(KU)) with sigma = psi^-1.

Every H^0 class is X times one of six types, X = beta^2a tau^4b in bidegree
(4a, 4a+4b)::

    type     class       at (s, c) mod 4
    '1'      X           (0, 0)
    rhoeta   rho eta0 X  (0, 0)
    th       tau^2 h X   (0, 2)
    rho2     rho^2 X     (2, 0)
    rho      rho X       (3, 0)
    eta      eta0 X      (1, 0)

In filtration n >= 1 the E2 page is F_2 on mu^n Y for Y of the types other
than th and rho2 (mu tau^2h = mu rho^2 = 0). d3 is the derivation with
d3(beta^2) = mu^3, so it multiplies mu^n Y by a (mod 2). The E4 page is
concentrated in filtrations 0, 1, 2 and the spectral sequence collapses
there.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .config import Config
from .exceptions import InvalidValueException, VerificationFailure
from .ku_ring import KUElement, ku_group, ku_monomial, ku_multiply, ku_psi, ku_psi_map
from .modlin import (FGModule, ModuleMap, c2_cohomology, cokernel, from_columns, map_kernel,
                     module_relations, solve_in_lattice, subquotient)
from .twoadic import gamma, residue

logger = logging.getLogger("greensphere")

TYPES = ('1', 'rhoeta', 'th', 'rho2', 'rho', 'eta')
_TYPES_AT = {
    (0, 0): ('1', 'rhoeta'),
    (0, 2): ('th',),
    (2, 0): ('rho2',),
    (3, 0): ('rho',),
    (1, 0): ('eta',),
}
_MU_KILLS = ('th', 'rho2')
# types that must be doubled to survive d3 when a is odd
_DOUBLED = ('1', 'rhoeta', 'rho', 'eta')

_PREFIX = {'1': '', 'rhoeta': 'ρη₀', 'th': 'τ²h', 'rho2': 'ρ²', 'rho': 'ρ', 'eta': 'η₀'}
_ODD_PREFIX = {'1': '2√v', 'rhoeta': 'η₀⁴', 'th': 'τ²h√v', 'rho2': 'η₀²', 'rho': 'η₀³', 'eta': 'ρ³v'}


# -------------
# E2 bookkeeping
# -------------

def _types(s0: int, c0: int) -> Tuple[str, ...]:
    if c0 % 2:
        return ()
    return _TYPES_AT.get((s0 % 4, c0 % 4), ())


def _params(t: str, s0: int, c0: int) -> Tuple[int, int]:
    """(a, b) of X = beta^2a tau^4b for a class of type t at (s0, c0)"""
    a = (s0 + 2) // 4
    b = (c0 - 4 * a - (2 if t == 'th' else 0)) // 4
    return a, b


def raw_class(t: str, a: int, b: int) -> KUElement:
    """The H^0 class of type t on X = beta^2a tau^4b"""
    if t == '1':
        return ku_monomial(2 * a, 2 * b, 0)
    if t == 'rhoeta':
        return ku_monomial(2 * a + 1, 2 * b - 1, 2)
    if t == 'th':
        return ku_monomial(2 * a, 2 * b + 1, 0, 2) - ku_monomial(2 * a + 1, 2 * b, 2)
    if t == 'rho2':
        return ku_monomial(2 * a, 2 * b, 2)
    if t == 'rho':
        return ku_monomial(2 * a, 2 * b, 1)
    if t == 'eta':
        return ku_monomial(2 * a + 1, 2 * b - 1, 1)
    raise InvalidValueException(f'unknown E2 type {t}')


def _class_name(t: str, a: int, b: int, n: int = 0, doubled: bool = False) -> str:
    """Name in the presentation by v, tau^4, rho, eta0, tau^2h, tau^2h sqrt(v), 2 sqrt(v), mu"""
    if a % 2 == 0:
        factors = [_PREFIX[t]]
        vexp = a // 2
    else:
        factors = [_ODD_PREFIX[t] if doubled or t in _MU_KILLS else _PREFIX[t] + '√v']
        vexp = (a - 1) // 2
    if n:
        factors.append('μ' if n == 1 else f'μ^{n}')
    if vexp:
        factors.append('v' if vexp == 1 else f'v^{vexp}')
    texp = 4 * (a + b)
    if texp:
        factors.append(f'τ^{texp}')
    return '·'.join(f for f in factors if f) or '1'


def e2_types(s: int, c: int, n: int) -> Tuple[str, ...]:
    """Types of the E2 basis in bidegree (s, c), filtration n"""
    if n < 0:
        raise InvalidValueException(f'filtration {n} < 0')
    types = _types(s - n, c - n)
    if n == 0:
        return types
    return tuple(t for t in types if t not in _MU_KILLS)


def e2_closed_form(s: int, c: int, n: int) -> FGModule:
    """The bidegree (s, c, n) piece of Z_2[beta^+-2, tau^+-4, rho, tau^2h, eta0, mu]/I"""
    types = e2_types(s, c, n)
    s0, c0 = s - n, c - n
    names = tuple(_class_name(t, *_params(t, s0, c0), n=n) for t in types)
    if n == 0:
        return FGModule(free_rank=len(types), basis_names=names)
    return FGModule(torsion=(1,) * len(types), basis_names=names)


def _e2_relations(s: int, c: int, n: int) -> List[List[Fraction]]:
    dim = len(e2_types(s, c, n))
    if n == 0:
        return []
    return [[Fraction(2 if i == jj else 0) for jj in range(dim)] for i in range(dim)]


def e2_page(s: int, c: int, n: int) -> FGModule:
    """H^n(C_2; pi_{s+n,c+n} b(KU)), checked against the closed form"""
    if n < 0:
        raise InvalidValueException(f'cohomological degree {n} < 0')
    module = ku_group(s + n, c + n)
    sigma = ku_psi_map(-1, s + n, c + n)
    computed = c2_cohomology(module, sigma, n) if module.free_rank else FGModule()
    closed = e2_closed_form(s, c, n)
    if not computed.same_group(closed):
        raise VerificationFailure(
            message=f'E2({s},{c},{n}): cohomology {computed} but presentation gives {closed}')
    return closed


def e2_monomial_class(x: KUElement) -> Dict[str, Fraction]:
    """Coordinates of a sigma-fixed KU class over the E2 types of its bidegree"""
    types = _types(x.s, x.c)
    if x.is_zero():
        return {}
    gens = [raw_class(t, *_params(t, x.s, x.c)).coeffs for t in types]
    w = solve_in_lattice(gens, x.coeffs) if gens else None
    if w is None:
        raise InvalidValueException(f'{x} is not a C_2-invariant class')
    return {t: c for t, c in zip(types, w) if c}


@dataclass(frozen=True)
class E2Class:
    """Element of the E2 page; coefficients follow e2_types(s, c, n)"""
    s: int
    c: int
    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        types = e2_types(self.s, self.c, self.n)
        if len(self.coeffs) != len(types):
            raise InvalidValueException(f'{len(self.coeffs)} coefficients for E2({self.s},{self.c},{self.n})')
        if self.n:
            object.__setattr__(self, 'coeffs', tuple(int(x) % 2 for x in self.coeffs))
        else:
            object.__setattr__(self, 'coeffs', tuple(int(x) for x in self.coeffs))

    @property
    def types(self) -> Tuple[str, ...]:
        return e2_types(self.s, self.c, self.n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        s0, c0 = self.s - self.n, self.c - self.n
        terms = [(x, _class_name(t, *_params(t, s0, c0), n=self.n)) for x, t in zip(self.coeffs, self.types) if x]
        return ' + '.join(name if x == 1 else f'{x}·{name}' for x, name in terms) or '0'


def e2_class(t: str, a: int, b: int, n: int = 0, coeff: int = 1) -> E2Class:
    """mu^n times the class of type t on beta^2a tau^4b"""
    s0, c0 = raw_class(t, a, b).bidegree
    s, c = s0 + n, c0 + n
    types = e2_types(s, c, n)
    if t not in types:
        raise InvalidValueException(f'mu^{n} kills the type {t}')
    return E2Class(s, c, n, tuple(coeff if x == t else 0 for x in types))


def d3(x: E2Class) -> E2Class:
    """The derivation with d3(beta^2) = mu^3, zero on mu, rho, tau^2h, eta0 and tau^4"""
    s, c, n = x.s - 1, x.c - 1, x.n + 3
    target = e2_types(s, c, n)
    s0, c0 = x.s - x.n, x.c - x.n
    out = []
    for t in target:
        coeff = x.coeffs[x.types.index(t)] if t in x.types else 0
        a, _ = _params(t, s0, c0)
        out.append(coeff * a % 2)
    return E2Class(s, c, n, tuple(out))


def _d3_images(s: int, c: int, n: int) -> List[List[Fraction]]:
    types = e2_types(s, c, n)
    return [list(map(Fraction, d3(E2Class(s, c, n, tuple(int(i == jj) for jj in range(len(types))))).coeffs))
            for i in range(len(types))]


def e4_page(s: int, c: int, n: int) -> FGModule:
    """Homology of d3 at (s, c, n)"""
    dim = len(e2_types(s, c, n))
    if dim == 0:
        return FGModule()
    rels = _e2_relations(s, c, n)
    cycles = map_kernel(_d3_images(s, c, n), dim, _e2_relations(s - 1, c - 1, n + 3), rels)
    bounds = list(rels)
    if n >= 3:
        bounds += _d3_images(s + 1, c + 1, n - 3)
    return subquotient(cycles, bounds, dim) if cycles else FGModule()


# ----------
# pi b(KO)
# ----------

@dataclass(frozen=True)
class KOClass:
    """A named basis element of pi_{s,c} b(KO)"""
    n: int              # filtration, 0 for the free part
    type: str
    a: int
    b: int
    doubled: bool
    vector: KUElement   # detecting KU class of Y for mu^n Y, or the free class itself
    name: str


@lru_cache(maxsize=8192)
def ko_basis(s: int, c: int) -> Tuple[KOClass, ...]:
    """Free classes first, then mu-multiples in filtrations 1 and 2"""
    basis = []
    for t in _types(s, c):
        a, b = _params(t, s, c)
        doubled = a % 2 == 1 and t in _DOUBLED
        vec = raw_class(t, a, b)
        if doubled:
            vec = vec.scale(2)
        basis.append(KOClass(0, t, a, b, doubled, vec, _class_name(t, a, b, doubled=doubled)))
    for n in (1, 2):
        s0, c0 = s - n, c - n
        for t in e2_types(s, c, n):
            a, b = _params(t, s0, c0)
            if a % 2 == 0:
                basis.append(KOClass(n, t, a, b, False, raw_class(t, a, b), _class_name(t, a, b, n=n)))
    return tuple(basis)


def _free_count(s: int, c: int) -> int:
    return sum(1 for k in ko_basis(s, c) if k.n == 0)


@lru_cache(maxsize=8192)
def ko_group(s: int, c: int) -> FGModule:
    """pi_{s,c} b(KO) with its named basis, checked against the E4 page"""
    basis = ko_basis(s, c)
    free = _free_count(s, c)
    group = FGModule(free_rank=free, torsion=(1,) * (len(basis) - free),
                     basis_names=tuple(k.name for k in basis))
    pages = [e4_page(s, c, n) for n in range(0, 7)]
    if any(not p.is_zero() for p in pages[3:]):
        raise VerificationFailure(message=f'E4 page above filtration 2 is nonzero at ({s},{c})')
    assembled = FGModule(free_rank=sum(p.free_rank for p in pages),
                         torsion=tuple(e for p in pages for e in p.torsion))
    if not assembled.same_group(group):
        raise VerificationFailure(message=f'KO({s},{c}): E4 assembles to {assembled}, presentation gives {group}')
    logger.debug(f'KO({s},{c}) = {group}')
    return group


@dataclass(frozen=True)
class KOElement:
    """Coefficients over ko_basis(s, c); mu-multiples are reduced mod 2"""
    s: int
    c: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        basis = ko_basis(self.s, self.c)
        if len(self.coeffs) != len(basis):
            raise InvalidValueException(f'{len(self.coeffs)} coefficients for KO({self.s},{self.c})')
        coeffs = tuple(Fraction(x) if k.n == 0 else Fraction(residue(x, 1))
                       for x, k in zip(self.coeffs, basis))
        object.__setattr__(self, 'coeffs', coeffs)

    @staticmethod
    def zero(s: int, c: int) -> 'KOElement':
        return KOElement(s, c, (0,) * len(ko_basis(s, c)))

    @staticmethod
    def basis_element(s: int, c: int, index: int, coeff=1) -> 'KOElement':
        return KOElement(s, c, tuple(coeff if i == index else 0 for i in range(len(ko_basis(s, c)))))

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.s, self.c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: 'KOElement') -> 'KOElement':
        if self.bidegree != other.bidegree:
            raise InvalidValueException(f'adding bidegrees {self.bidegree} and {other.bidegree}')
        return KOElement(self.s, self.c, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'KOElement') -> 'KOElement':
        return self + other.scale(-1)

    def scale(self, x) -> 'KOElement':
        return KOElement(self.s, self.c, tuple(Fraction(x) * a for a in self.coeffs))

    def __str__(self):
        basis = ko_basis(self.s, self.c)
        terms = [(x, k.name) for x, k in zip(self.coeffs, basis) if x]
        return ' + '.join(name if x == 1 else f'{x}·{name}' for x, name in terms) or '0'


def named(name: str, s: int, c: int) -> KOElement:
    """The basis element called name in bidegree (s, c)"""
    for i, k in enumerate(ko_basis(s, c)):
        if k.name == name:
            return KOElement.basis_element(s, c, i)
    raise InvalidValueException(f'no KO class {name} in bidegree ({s},{c})')


def ko_from_ku(x: KUElement) -> KOElement:
    """The filtration-0 KO class detected by x"""
    basis = ko_basis(x.s, x.c)
    free = [k for k in basis if k.n == 0]
    if x.is_zero():
        return KOElement.zero(x.s, x.c)
    w = solve_in_lattice([k.vector.coeffs for k in free], x.coeffs) if free else None
    if w is None:
        raise InvalidValueException(f'{x} is not detected by a KO class')
    return KOElement(x.s, x.c, tuple(w) + (0,) * (len(basis) - len(free)))


def _torsion_index(s: int, c: int, n: int, t: str) -> int:
    for i, k in enumerate(ko_basis(s, c)):
        if k.n == n and k.type == t:
            return i
    raise VerificationFailure(message=f'product lands on mu^{n}·{t} which is zero in KO({s},{c})')


def _mu_multiple(n: int, y: KUElement, s: int, c: int) -> List[Tuple[int, int]]:
    """(index, bit) of mu^n y in KO(s, c) for a sigma-fixed KU class y"""
    out = []
    for t, coeff in e2_monomial_class(y).items():
        if t in _MU_KILLS or residue(coeff, 1) == 0:
            continue
        out.append((_torsion_index(s, c, n, t), 1))
    return out


def _hidden(p: KOClass, q: KOClass) -> Optional[str]:
    """Filtration-2 type of the hidden extension between two free classes"""
    if p.doubled or q.doubled:
        return None
    if q.type == 'th':
        p, q = q, p
    if p.type != 'th':
        return None
    odd = (p.a + q.a) % 2 == 1
    if q.type == 'rho' and odd:
        return 'eta'        # rho tau^2h sqrt(v) = eta0 mu^2
    if q.type == 'eta' and not odd:
        return 'rho'        # eta0 tau^2h = rho mu^2
    if q.type == 'rho2' and odd:
        return 'rhoeta'
    return None


def _basis_product(p: KOClass, q: KOClass, s: int, c: int) -> KOElement:
    out = KOElement.zero(s, c)
    vec = list(out.coeffs)
    if p.n == 0 and q.n == 0:
        out = ko_from_ku(ku_multiply(p.vector, q.vector))
        vec = list(out.coeffs)
        hidden = _hidden(p, q)
        if hidden is not None:
            vec[_torsion_index(s, c, 2, hidden)] += 1
    elif p.n + q.n <= 2:
        for i, bit in _mu_multiple(p.n + q.n, ku_multiply(p.vector, q.vector), s, c):
            vec[i] += bit
    return KOElement(s, c, tuple(vec))


def ko_multiply(x: KOElement, y: KOElement) -> KOElement:
    s, c = x.s + y.s, x.c + y.c
    out = KOElement.zero(s, c)
    bx, by = ko_basis(x.s, x.c), ko_basis(y.s, y.c)
    for a, p in zip(x.coeffs, bx):
        if not a:
            continue
        for b, q in zip(y.coeffs, by):
            if b:
                out = out + _basis_product(p, q, s, c).scale(a * b)
    return out


def rho_power(t: int) -> KOElement:
    if t < 0:
        raise InvalidValueException(f'negative power of rho {t}')
    return ko_from_ku(ku_monomial(0, 0, t))


def ko_psi(k: int, x: KOElement) -> KOElement:
    """psi^k via the detecting KU classes; the identity on mu-multiples"""
    if k % 2 == 0:
        raise InvalidValueException(f'Adams operation psi^{k} needs odd k')
    basis = ko_basis(x.s, x.c)
    out = KOElement(x.s, x.c, tuple(0 if b.n == 0 else a for a, b in zip(x.coeffs, basis)))
    for a, b in zip(x.coeffs, basis):
        if a and b.n == 0:
            out = out + ko_from_ku(ku_psi(k, b.vector)).scale(a)
    return out


def _group_with_relations(s: int, c: int) -> Tuple[int, List[List[Fraction]]]:
    g = ko_group(s, c)
    return g.free_rank + len(g.torsion), module_relations(g)


def psi_minus_one_matrix(s: int, c: int, k: int = None) -> ModuleMap:
    """psi^k - 1 on ko_group(s, c)"""
    k = Config.k if k is None else k
    g = ko_group(s, c)
    dim = len(ko_basis(s, c))
    cols = []
    for i in range(dim):
        e = KOElement.basis_element(s, c, i)
        cols.append((ko_psi(k, e) - e).coeffs)
    return ModuleMap(g, g, tuple(tuple(r) for r in from_columns(cols, dim)))


def divisible_by_rho(x: KOElement, t: int) -> Optional[KOElement]:
    """y with rho^t y = x, or None"""
    src = (x.s + t, x.c)
    rt = rho_power(t)
    images = [ko_multiply(KOElement.basis_element(*src, i), rt).coeffs
              for i in range(len(ko_basis(*src)))]
    _, rels = _group_with_relations(x.s, x.c)
    if x.is_zero():
        return KOElement.zero(*src)
    w = solve_in_lattice(images, x.coeffs, rels) if images else None
    if w is None:
        return None
    return KOElement(src[0], src[1], tuple(w))


def _rho_map(power: int, s: int, c: int) -> List[List[Fraction]]:
    """Images of the basis of KO(s + power, c) under rho^power"""
    rp = rho_power(power)
    return [list(ko_multiply(KOElement.basis_element(s + power, c, i), rp).coeffs)
            for i in range(len(ko_basis(s + power, c)))]


def ko_rho_images(s: int, c: int) -> List[List[Fraction]]:
    """rho times each basis element of KO(s, c), as coefficients in KO(s-1, c)"""
    return _rho_map(1, s - 1, c)


def ko_finite_stunted(m: int, n: int) -> Tuple[FGModule, FGModule, int]:
    """(coker, ker, reduced order) for KO^0 of P_m^(m+n) from the rho^(n+1) sequence.

    The cokernel is that of rho^(n+1) into KO(m-1, 0), the kernel that of
    rho^(n+1) on KO(m-1+n, -1). The order counts torsion only; the free part
    of the cokernel is the unreduced summand.
    """
    if n < 0:
        raise InvalidValueException(f'stunted complex with n = {n} < 0')
    s = m - 1
    dim, rels = _group_with_relations(s, 0)
    images = _rho_map(n + 1, s, 0)
    cols = images + rels
    coker = cokernel(from_columns(cols, dim), dim, len(cols)) if dim and cols else FGModule(free_rank=dim)
    kdim, krels = _group_with_relations(s + n, -1)
    ker = FGModule()
    if kdim:
        _, trels = _group_with_relations(s - 1, -1)
        kimages = _rho_map(n + 1, s - 1, -1)
        ker = subquotient(map_kernel(kimages, kdim, trels, krels), krels, kdim)
    order = 2 ** (sum(coker.torsion) + sum(ker.torsion))
    if ker.free_rank:
        raise VerificationFailure(message=f'stunted KO kernel at m={m}, n={n} is not finite')
    return coker, ker, order


def reduced_ko0_order(n: int) -> int:
    """|KO~^0(P_1^n)|, which is 2^gamma(n)"""
    _, _, order = ko_finite_stunted(1, n)
    if order != 2 ** gamma(n):
        raise VerificationFailure(message=f'|KO~(P_1^{n})| = {order}, expected 2^{gamma(n)}')
    return order
