# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# modlin.py - Exact linear algebra over the 2-adic integers
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 04-Sep-2026   gsd 0.1 SNF through sympy DomainMatrix, kernel, cokernel
# 10-Sep-2026   gsd 0.2 2-adic echelon for normal forms and witnesses
# 16-Sep-2026   gsd 0.3 Modules with torsion: map_kernel, subquotient
# 18-Oct-2026   gsd 0.4 Named lifts of cokernel generators in ker_coker_endo
#
"""Finitely generated Z_2-modules and maps between them.

Matrices are lists of rows. A map x -> M x sends the j-th source generator to
column j. Entries may be ints or Fractions with odd denominator; the Smith
normal form runs on exact integers (``sympy.polys.matrices``) after scaling
rows or columns by odd units, which changes nothing 2-adically.

A module is presented as Z_2^n modulo the span of relation vectors. Normal
forms modulo a lattice use a 2-adic echelon form: per coordinate the pivot is
the entry of least valuation, normalized to an exact power of 2, and a reduced
vector has every pivot coordinate in [0, 2^e).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .config import Config
from .exceptions import InvalidValueException, PrecisionExhaustedException, VerificationFailure
from .twoadic import INFINITY, residue, two_integral, val2

logger = logging.getLogger("greensphere")

Vector = List[Fraction]
Matrix = List[List]


# -----------
# FGModule
# -----------

@dataclass(frozen=True)
class FGModule:
    """Z_2^free_rank + sum of Z/2^e. ``relations`` (optional) records how the
    named generators present the module; each vector has len(basis_names)
    entries.
    """
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()
    basis_names: Tuple[str, ...] = ()
    relations: Tuple[Tuple[Fraction, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'torsion', tuple(sorted(self.torsion)))
        if any(e <= 0 for e in self.torsion):
            raise InvalidValueException(f'torsion exponents must be positive: {self.torsion}')

    @property
    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.free_rank, self.torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Number of elements, INFINITY when there is a free summand"""
        if self.free_rank:
            return INFINITY
        return 2 ** sum(self.torsion)

    def same_group(self, other: 'FGModule') -> bool:
        return self.invariants == other.invariants

    def __str__(self):
        parts = ['Z2'] * self.free_rank + [f'Z/{2 ** e}' for e in self.torsion]
        return ' + '.join(parts) if parts else '0'

    def to_dict(self) -> dict:
        return {'free_rank': self.free_rank, 'torsion': [2 ** e for e in self.torsion],
                'basis': list(self.basis_names)}


def module_relations(m: FGModule) -> List[Vector]:
    """Relations of Z^free + Z/2^e in its standard basis"""
    n = m.free_rank + len(m.torsion)
    rels = []
    for i, e in enumerate(m.torsion):
        v = [Fraction(0)] * n
        v[m.free_rank + i] = Fraction(2 ** e)
        rels.append(v)
    return rels


@dataclass(frozen=True)
class ModuleMap:
    """A map of modules in chosen bases; ``matrix`` has one row per target generator"""
    source: FGModule
    target: FGModule
    matrix: Tuple[Tuple, ...]

    def images(self) -> List[Vector]:
        return columns(self.matrix, self.source.free_rank + len(self.source.torsion))


# -----------
# Helpers
# -----------

def columns(matrix: Sequence[Sequence], ncols: int = None) -> List[Vector]:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return [[Fraction(row[jj]) for row in matrix] for jj in range(ncols)]


def from_columns(cols: Sequence[Sequence], nrows: int) -> Matrix:
    return [[Fraction(c[i]) for c in cols] for i in range(nrows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == jj)) for jj in range(n)] for i in range(n)]


def _odd_lcm(values) -> int:
    dens = [Fraction(v).denominator for v in values]
    if any(d % 2 == 0 for d in dens):
        raise InvalidValueException('entry is not a 2-adic integer')
    return reduce(lcm, dens, 1)


def integral_vector(v: Sequence) -> List[int]:
    """v scaled by an odd unit so that all entries are integers"""
    d = _odd_lcm(v)
    return [int(Fraction(x) * d) for x in v]


def _integral_rows(matrix: Sequence[Sequence]) -> List[List[int]]:
    return [integral_vector(row) for row in matrix]


def _integral_columns(matrix: Sequence[Sequence], ncols: int) -> List[List[int]]:
    cols = [integral_vector(c) for c in columns(matrix, ncols)]
    return [[c[i] for c in cols] for i in range(len(matrix))]


def _check_exponent(e: int):
    bound = Config.precision - Config.slack
    if e >= bound:
        raise PrecisionExhaustedException(
            f'invariant factor 2^{e} not below 2^{bound} (precision {Config.precision})')


# -----------------
# Smith normal form
# -----------------

def smith_normal_form(m: Sequence[Sequence[int]], ncols: int = None):
    """(D, U, V) with U*M*V = D over the integers. M must be integral."""
    rows = len(m)
    if ncols is None:
        ncols = len(m[0]) if rows else 0
    if rows == 0 or ncols == 0:
        d = [[0] * ncols for _ in range(rows)]
        u = [[int(i == jj) for jj in range(rows)] for i in range(rows)]
        v = [[int(i == jj) for jj in range(ncols)] for i in range(ncols)]
        return d, u, v
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in m], (rows, ncols), ZZ)
    d, u, v = smith_normal_decomp(dm)
    as_ints = lambda x: [[int(e) for e in row] for row in x.to_Matrix().tolist()]
    return as_ints(d), as_ints(u), as_ints(v)


def _diagonal(d: Matrix) -> List[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def invariant_exponents(m: Sequence[Sequence], ncols: int = None) -> Tuple[int, List[int]]:
    """(rank, 2-valuations of the nonzero invariant factors)"""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    d, _, _ = smith_normal_form(_integral_columns(m, ncols) if m else m, ncols)
    diag = [x for x in _diagonal(d) if x != 0] if m else []
    return len(diag), [val2(x) for x in diag]


def cokernel(m: Sequence[Sequence], ambient_rank: int, ncols: int = None) -> FGModule:
    """Z_2^ambient_rank modulo the column span of m"""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if ambient_rank == 0:
        return FGModule()
    if ncols == 0:
        return FGModule(free_rank=ambient_rank)
    rank, exps = invariant_exponents(m, ncols)
    torsion = [e for e in exps if e > 0]
    for e in torsion:
        _check_exponent(e)
    return FGModule(free_rank=ambient_rank - rank, torsion=tuple(torsion))


def kernel(m: Sequence[Sequence], ncols: int = None) -> List[List[int]]:
    """Saturated basis of ker(m), each vector with first nonzero entry positive"""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[int(i == jj) for jj in range(ncols)] for i in range(ncols)]
    d, _, v = smith_normal_form(_integral_rows(m), ncols)
    diag = _diagonal(d)
    rank = sum(1 for x in diag if x != 0)
    basis = []
    for jj in range(rank, ncols):
        vec = [v[i][jj] for i in range(ncols)]
        lead = next(x for x in vec if x != 0)
        basis.append([x if lead > 0 else -x for x in vec])
    return basis


def cokernel_generators(m: Sequence[Sequence], ambient_rank: int, ncols: int = None):
    """Lifts of the cyclic generators of coker(m): list of (exponent or 0, vector)"""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if ncols == 0 or ambient_rank == 0:
        return [(0, [int(i == jj) for i in range(ambient_rank)]) for jj in range(ambient_rank)]
    d, u, _ = smith_normal_form(_integral_columns(m, ncols), ncols)
    uinv = DomainMatrix([[ZZ(x) for x in row] for row in u], (ambient_rank, ambient_rank), ZZ)
    uinv = uinv.to_field().inv().to_Matrix().tolist()
    diag = _diagonal(d) + [0] * (ambient_rank - len(_diagonal(d)))
    gens = []
    for i, x in enumerate(diag):
        e = 0 if x == 0 else val2(x)
        if x != 0 and e == 0:
            continue
        gens.append((e, [int(uinv[r][i]) for r in range(ambient_rank)]))
    return gens


# ----------------------
# 2-adic echelon lattice
# ----------------------

class Lattice:
    """Z_2-span of a set of vectors with a canonical reduction"""

    def __init__(self, vectors: Sequence[Sequence], dim: int, tags: Sequence[Sequence] = None):
        self.dim = dim
        self.width = len(tags[0]) if tags else 0
        rows = []
        for idx, v in enumerate(vectors):
            vec = [Fraction(x) for x in v]
            if len(vec) != dim:
                raise InvalidValueException(f'vector of length {len(vec)} in dimension {dim}')
            if not all(two_integral(x) for x in vec):
                raise InvalidValueException(f'vector {vec} is not 2-integral')
            tag = [Fraction(x) for x in tags[idx]] if tags is not None else []
            rows.append((vec, tag))
        self.pivots: List[Tuple[int, int, Vector, Vector]] = []    # (column, exponent, row, tag)
        for col in range(dim):
            candidates = [r for r in rows if r[0][col] != 0]
            if not candidates:
                continue
            best = min(candidates, key=lambda r: val2(r[0][col]))
            rows.remove(best)
            vec, tag = best
            e = val2(vec[col])
            unit = Fraction(2 ** e) / vec[col]
            vec = [x * unit for x in vec]
            tag = [x * unit for x in tag]
            for r in rows:
                if r[0][col] != 0:
                    t = r[0][col] / vec[col]
                    for i in range(dim):
                        r[0][i] -= t * vec[i]
                    for i in range(len(tag)):
                        r[1][i] -= t * tag[i]
            rows = [r for r in rows if any(x != 0 for x in r[0])]
            self.pivots.append((col, e, vec, tag))

    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> List[Vector]:
        return [p[2] for p in self.pivots]

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of v modulo the lattice"""
        x = [Fraction(a) for a in v]
        for col, e, row, _ in self.pivots:
            if x[col] == 0:
                continue
            r = residue(x[col], e)
            t = (x[col] - r) / row[col]
            if t:
                x = [a - t * b for a, b in zip(x, row)]
        return x

    def contains(self, v: Sequence) -> bool:
        return all(a == 0 for a in self.reduce(v))

    def solve(self, v: Sequence) -> Optional[Vector]:
        """Tag combination w with v = sum of w-weighted tagged vectors, or None"""
        x = [Fraction(a) for a in v]
        w = [Fraction(0)] * self.width
        for col, e, row, tag in self.pivots:
            if x[col] == 0:
                continue
            if val2(x[col]) < e:
                return None
            t = x[col] / row[col]
            x = [a - t * b for a, b in zip(x, row)]
            w = [a + t * b for a, b in zip(w, tag)]
        if any(a != 0 for a in x):
            return None
        return w


def reduce_mod_lattice(vec: Sequence, relations: Sequence[Sequence]) -> Vector:
    return Lattice(relations, len(vec)).reduce(vec)


def lattice_equal(gens1: Sequence[Sequence], gens2: Sequence[Sequence], dim: int) -> bool:
    l1, l2 = Lattice(gens1, dim), Lattice(gens2, dim)
    return all(l2.contains(v) for v in gens1) and all(l1.contains(v) for v in gens2)


def solve_in_lattice(generators: Sequence[Sequence], target: Sequence,
                     relations: Sequence[Sequence] = ()) -> Optional[Vector]:
    """Coefficients w with target = sum w_i generators_i modulo relations, or None"""
    dim = len(target)
    n = len(generators)
    tags = [[int(i == jj) for jj in range(n)] for i in range(n)] + [[0] * n for _ in relations]
    lat = Lattice(list(generators) + list(relations), dim, tags)
    w = lat.solve(target)
    return w


# -----------------------
# Modules with relations
# -----------------------

def map_kernel(images: Sequence[Sequence], source_dim: int,
               target_relations: Sequence[Sequence] = (),
               source_relations: Sequence[Sequence] = ()) -> List[Vector]:
    """Generators of the kernel of a map Z^n/R_s -> Z^m/R_t given by the images
    of the source generators. The result contains R_s.
    """
    target_dim = len(images[0]) if images else 0
    if source_dim == 0:
        return []
    if target_dim == 0:
        return [[Fraction(int(i == jj)) for jj in range(source_dim)] for i in range(source_dim)]
    cols = [list(c) for c in images] + [[-Fraction(x) for x in r] for r in target_relations]
    scales = [_odd_lcm(c) for c in cols]
    cols = [[Fraction(x) * s for x in c] for c, s in zip(cols, scales)]
    m = [[int(c[i]) for c in cols] for i in range(target_dim)]
    gens = []
    for vec in kernel(m, len(cols)):
        part = [Fraction(vec[i]) * scales[i] for i in range(source_dim)]
        if any(x != 0 for x in part):
            gens.append(part)
    return gens + [[Fraction(x) for x in r] for r in source_relations]


def subquotient(numerator: Sequence[Sequence], denominator: Sequence[Sequence], dim: int) -> FGModule:
    """span(numerator) / span(denominator); the denominator must lie in the numerator"""
    lat = Lattice(numerator, dim)
    basis = lat.basis()
    r = len(basis)
    if r == 0:
        return FGModule()
    coords = []
    for v in denominator:
        w = solve_in_lattice(basis, v)
        if w is None:
            raise VerificationFailure(message=f'subquotient: {v} is not in the numerator lattice')
        coords.append(w)
    m = from_columns(coords, r) if coords else [[] for _ in range(r)]
    return cokernel(m, r, len(coords))


def presented(dim: int, relations: Sequence[Sequence], names: Sequence[str] = ()) -> FGModule:
    """Z_2^dim modulo relations, keeping the generator names and relations"""
    m = from_columns(relations, dim) if relations else [[] for _ in range(dim)]
    mod = cokernel(m, dim, len(relations))
    return FGModule(mod.free_rank, mod.torsion, tuple(names),
                    tuple(tuple(Fraction(x) for x in r) for r in relations))


# ----------------
# Group cohomology
# ----------------

def _endomorphism_check(module: FGModule, sigma: ModuleMap):
    n = module.free_rank + len(module.torsion)
    if len(sigma.matrix) != n or any(len(row) != n for row in sigma.matrix):
        raise InvalidValueException('sigma is not an endomorphism of the module')


def _compose(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n = len(b[0]) if b else 0
    return [[sum(Fraction(a[i][t]) * Fraction(b[t][jj]) for t in range(len(b))) for jj in range(n)]
            for i in range(len(a))]


def _shift(matrix: Sequence[Sequence], c: int) -> Matrix:
    """matrix + c * identity"""
    return [[Fraction(x) + (c if i == jj else 0) for jj, x in enumerate(row)] for i, row in enumerate(matrix)]


def c2_cohomology(module: FGModule, sigma: ModuleMap, n: int) -> FGModule:
    """H^n(C_2; M) for the involution sigma, from the cyclic-group formulas"""
    if n < 0:
        raise InvalidValueException(f'cohomological degree {n} < 0')
    _endomorphism_check(module, sigma)
    dim = module.free_rank + len(module.torsion)
    rels = module_relations(module)
    sq = _compose(sigma.matrix, sigma.matrix)
    for v in columns(_shift(sq, -1), dim):
        if not Lattice(rels, dim).contains(v):
            raise InvalidValueException('sigma does not square to the identity')
    if n == 0:
        kmap, imap = _shift(sigma.matrix, -1), None
    elif n % 2 == 1:
        kmap, imap = _shift(sigma.matrix, 1), _shift(sigma.matrix, -1)
    else:
        kmap, imap = _shift(sigma.matrix, -1), _shift(sigma.matrix, 1)
    cycles = map_kernel(columns(kmap, dim), dim, rels, rels)
    bounds = (columns(imap, dim) if imap is not None else []) + rels
    return subquotient(cycles, bounds, dim)


def _combination(vec: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for x, name in zip(vec, names):
        if x == 1:
            parts.append(name)
        elif x == -1:
            parts.append(f'-{name}')
        elif x:
            parts.append(f'{x}*{name}')
    return ' + '.join(parts).replace('+ -', '- ') or '0'


def ker_coker_endo(module: FGModule, phi: ModuleMap) -> Tuple[FGModule, FGModule]:
    """(ker phi, coker phi) for an endomorphism phi

    The cokernel's ``basis_names`` name a lift of each cyclic generator in
    the named basis of ``module`` (positional ``e0, e1, ...`` when the module
    has none); free generators come first, then torsion by exponent.
    """
    _endomorphism_check(module, phi)
    dim = module.free_rank + len(module.torsion)
    rels = module_relations(module)
    images = columns(phi.matrix, dim)
    ker = subquotient(map_kernel(images, dim, rels, rels), rels, dim)
    coker_rel = images + rels
    if not coker_rel:
        return ker, FGModule(free_rank=dim, basis_names=module.basis_names)
    m = from_columns(coker_rel, dim)
    coker = cokernel(m, dim, len(coker_rel))
    names = module.basis_names if len(module.basis_names) == dim else tuple(f'e{i}' for i in range(dim))
    lifts = sorted(cokernel_generators(m, dim, len(coker_rel)), key=lambda g: (g[0] != 0, g[0]))
    if (sum(1 for e, _ in lifts if e == 0), tuple(e for e, _ in lifts if e)) != coker.invariants:
        raise VerificationFailure(message=f'cokernel lifts {[e for e, _ in lifts]} disagree with {coker}')
    return ker, FGModule(coker.free_rank, coker.torsion, tuple(_combination(v, names) for _, v in lifts))
