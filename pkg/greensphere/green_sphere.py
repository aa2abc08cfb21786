# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# green_sphere.py - The Green functor of the K(1)-local C2 sphere
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 22-Sep-2026   gsd 0.1 Additive groups from the table file, named word bases
# 26-Sep-2026   gsd 0.2 Word normalizer, products, restriction and unit
# 30-Sep-2026   gsd 0.3 Transfers, Weyl action, Mackey levels
# 05-Oct-2026   gsd 0.4 tau^4 shift on rho^3-torsion, descent cross-check
# 18-Oct-2026   gsd 0.5 Rewrite rules read from the product rows of the table file
# 18-Oct-2026   gsd 0.6 Descent check compares the rank of w[0] as well
#
"""pi_{s,c} of the Borel K(1)-local C2 sphere as a Green functor.

The additive groups, the restriction to pi_* S, the transfers and the unit
map are read from ``data/green_tables.toml``. Elements are coefficient
vectors over the additive basis of their bidegree; each basis element is a
word in the seven generator families::

    family  ascii      bidegree
    W       w[a]       (8a-1, 0)          w[0] is rho
    E       eta[a]     (8a+1, 0)
    H       tauh[n]    (0, 2n)            tauh[0] is 2 - w[0]*eta[0]
    M       mu[a,b]    (8a+1, 4b+1)
    Z       zeta[a,b]  (8a+3, 4b+1)
    R       rho[a,b]   (8a-1, 4b-1)
    X       xi[a,b]    (8a+3, 4b-1)

Products are computed by rewriting words to basis words (:py:func:`normalize`).
Each step first gathers the indices of a word onto one generator, which is
what the ``rewrite = false`` product rows of the table file say, and
otherwise applies the first remaining product row whose lhs matches a
sub-word, in file order.
"""
import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from threading import Lock
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .classical_sphere import SElement, s_basis, s_group, s_multiply
from .classical_sphere import g as s_g
from .classical_sphere import mu as s_mu
from .classical_sphere import one as s_one
from .classical_sphere import rho as s_rho
from .classical_sphere import xi as s_xi
from .config import Config
from .exceptions import (ExpressionParseException, InvalidValueException, TableFormatException,
                         UnreachableProductError, UnspecifiedProductException, VerificationFailure)
from .expr import Env, Expression
from .ko_ring import ko_basis, ko_group, ko_rho_images, psi_minus_one_matrix
from .modlin import (FGModule, Lattice, ModuleMap, columns, from_columns, ker_coker_endo, lattice_equal,
                     map_kernel, module_relations, presented)
from .tables import AdditiveRow, Pattern, ProductRow, Tables, load_tables, reset_tables
from .twoadic import INFINITY, Scalar

logger = logging.getLogger("greensphere")


# -----------
# Generators
# -----------

class Family(IntEnum):
    W = 0
    E = 1
    H = 2
    M = 3
    Z = 4
    R = 5
    X = 6


ASCII = {Family.W: 'w', Family.E: 'eta', Family.H: 'tauh', Family.M: 'mu',
         Family.Z: 'zeta', Family.R: 'rho', Family.X: 'xi'}
FAMILY_BY_NAME = {v: k for k, v in ASCII.items()}
_ONE_INDEX = (Family.W, Family.E, Family.H)
_CARRIERS = (Family.Z, Family.R, Family.X)

_SUB = str.maketrans('0123456789-', '₀₁₂₃₄₅₆₇₈₉₋')
_SUP = str.maketrans('0123456789-', '⁰¹²³⁴⁵⁶⁷⁸⁹⁻')


class Gen(NamedTuple):
    """One generator; H(n) is tau^2n h and keeps n in ``a``"""
    family: Family
    a: int
    b: int = 0

    @property
    def bidegree(self) -> Tuple[int, int]:
        f, a, b = self
        if f == Family.W:
            return (8 * a - 1, 0)
        if f == Family.E:
            return (8 * a + 1, 0)
        if f == Family.H:
            return (0, 2 * a)
        if f == Family.M:
            return (8 * a + 1, 4 * b + 1)
        if f == Family.Z:
            return (8 * a + 3, 4 * b + 1)
        if f == Family.R:
            return (8 * a - 1, 4 * b - 1)
        return (8 * a + 3, 4 * b - 1)

    @property
    def ascii(self) -> str:
        if self.family in _ONE_INDEX:
            return f'{ASCII[self.family]}[{self.a}]'
        return f'{ASCII[self.family]}[{self.a},{self.b}]'

    @property
    def label(self) -> str:
        f, a, b = self
        if f == Family.W:
            return 'ω' + str(a).translate(_SUB)
        if f == Family.E:
            return 'η' + str(a).translate(_SUB)
        if f == Family.H:
            return 'h' if a == 0 else 'τ' + str(2 * a).translate(_SUP) + 'h'
        sym = {Family.M: 'μ', Family.Z: 'ζ', Family.R: 'ρ', Family.X: 'ξ'}[f]
        if f == Family.M and a == 0 and b == 0:
            return 'μ₀'
        return f'{sym}_{{{a},{b}}}'


Word = Tuple[Gen, ...]

W0 = Gen(Family.W, 0)
E0 = Gen(Family.E, 0)
M00 = Gen(Family.M, 0, 0)
H1 = Gen(Family.H, 1)


def word(gens: Iterable[Gen]) -> Word:
    return tuple(sorted(gens))


def word_bidegree(w: Sequence[Gen]) -> Tuple[int, int]:
    return (sum(g.bidegree[0] for g in w), sum(g.bidegree[1] for g in w))


def _powers(w: Word) -> List[Tuple[Gen, int]]:
    out = []
    for g in w:
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + 1)
        else:
            out.append((g, 1))
    return out


def word_name(w: Word) -> str:
    """ASCII name in the generator grammar, '1' for the empty word"""
    if not w:
        return '1'
    return '*'.join(g.ascii if n == 1 else f'{g.ascii}^{n}' for g, n in _powers(w))


def word_label(w: Word) -> str:
    """Unicode label for charts"""
    if not w:
        return '1'
    return ''.join(g.label if n == 1 else g.label + str(n).translate(_SUP) for g, n in _powers(w))


def gen_from_atom(name: str, indices: Tuple) -> Gen:
    if name not in FAMILY_BY_NAME:
        raise ExpressionParseException(f'unknown generator name {name}')
    family = FAMILY_BY_NAME[name]
    arity = 1 if family in _ONE_INDEX else 2
    if len(indices) != arity:
        raise ExpressionParseException(f'{name} takes {arity} index(es), got {len(indices)}')
    if any(isinstance(x, Fraction) for x in indices):
        raise ExpressionParseException(f'{name}{list(indices)} needs integer indices')
    return Gen(family, *(int(x) for x in indices))


def parse_word(text: str, env: Env = None) -> Word:
    """A bare product of generators such as ``w[0]^2*eta[1]``"""
    return word(gen_from_atom(n, i) for n, i in Expression(text).monomial(env or {}))


# ---------------
# Additive groups
# ---------------

@dataclass(frozen=True)
class _Level:
    """The additive presentation of one bidegree"""
    s: int
    c: int
    module: FGModule
    words: Tuple[Word, ...]
    rows: Tuple[Tuple[AdditiveRow, Tuple[Tuple[str, int], ...], int], ...]    # row, env, word index
    lattice: Lattice

    def index(self, w: Word) -> Optional[int]:
        try:
            return self.words.index(w)
        except ValueError:
            return None


_levels: Dict[Tuple[int, int, int, int], _Level] = {}
_levels_lock = Lock()


def _scalar(expr: Expression, env: Env, where: str) -> Fraction:
    value = expr.evaluate(GREEN, env)
    if not isinstance(value, Fraction):
        raise TableFormatException(f'{where}: relation entry "{expr.text}" is not a scalar')
    return value


def _level(s: int, c: int) -> _Level:
    key = (s, c, Config.k, Config.precision)
    with _levels_lock:
        if key in _levels:
            return _levels[key]
    words: List[Word] = []
    rows = []
    relations: List[List[Fraction]] = []
    blocks = []
    for row, env in load_tables().additive_rows(s, c):
        start = len(words)
        for i, expr in enumerate(row.words):
            w = word(gen_from_atom(n, idx) for n, idx in expr.monomial(env))
            if word_bidegree(w) != (s, c):
                raise TableFormatException(f'basis word {word_name(w)} listed at ({s},{c}) '
                                           f'has bidegree {word_bidegree(w)}')
            if w in words:
                raise TableFormatException(f'basis word {word_name(w)} listed twice at ({s},{c})')
            words.append(w)
            rows.append((row, tuple(sorted(env.items())), i))
        blocks.append((start, [[_scalar(x, env, f'({s},{c})') for x in vec] for vec in row.relations]))
    dim = len(words)
    for start, vecs in blocks:
        for vec in vecs:
            full = [Fraction(0)] * dim
            full[start:start + len(vec)] = vec
            if any(full):
                relations.append(full)
    module = presented(dim, relations, tuple(word_name(w) for w in words))
    level = _Level(s, c, module, tuple(words), tuple(rows), Lattice(relations, dim))
    logger.debug(f'[green] pi_({s},{c}) = {module}')
    with _levels_lock:
        _levels[key] = level
    return level


def group(s: int, c: int) -> FGModule:
    """pi_{s,c} with its basis named by words and its presenting relations"""
    return _level(s, c).module


def basis_words(s: int, c: int) -> Tuple[Word, ...]:
    return _level(s, c).words


def reset_caches():
    """Forget the tables, rewrite rules, groups and normal forms"""
    global _compiled
    reset_tables()
    with _levels_lock:
        _levels.clear()
    with _compiled_lock:
        _compiled = None
    with _reduced_lock:
        _reduced.clear()


# -------------
# GreenElement
# -------------

@dataclass(frozen=True)
class GreenElement:
    """Coefficients over basis_words(s, c), reduced modulo the relations"""
    s: int
    c: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        level = _level(self.s, self.c)
        if len(self.coeffs) != len(level.words):
            raise InvalidValueException(f'{len(self.coeffs)} coefficients for pi_({self.s},{self.c})')
        object.__setattr__(self, 'coeffs', tuple(level.lattice.reduce(self.coeffs)))

    @staticmethod
    def zero(s: int, c: int) -> 'GreenElement':
        return GreenElement(s, c, (0,) * len(basis_words(s, c)))

    @staticmethod
    def of(w: Word, coeff=1) -> 'GreenElement':
        """A basis word of its bidegree times coeff"""
        s, c = word_bidegree(w)
        words = basis_words(s, c)
        if w not in words:
            raise InvalidValueException(f'{word_name(w)} is not a basis word of pi_({s},{c})')
        return GreenElement(s, c, tuple(coeff if x == w else 0 for x in words))

    @staticmethod
    def one() -> 'GreenElement':
        return GreenElement.of(())

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.s, self.c)

    @property
    def words(self) -> Tuple[Word, ...]:
        return basis_words(self.s, self.c)

    def terms(self) -> List[Tuple[Fraction, Word]]:
        return [(x, w) for x, w in zip(self.coeffs, self.words) if x]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: 'GreenElement') -> 'GreenElement':
        if self.bidegree != other.bidegree:
            raise InvalidValueException(f'adding bidegrees {self.bidegree} and {other.bidegree}')
        return GreenElement(self.s, self.c, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'GreenElement') -> 'GreenElement':
        return self + other.scale(-1)

    def scale(self, x) -> 'GreenElement':
        x = Scalar.of(x).value
        return GreenElement(self.s, self.c, tuple(x * a for a in self.coeffs))

    def __mul__(self, other: 'GreenElement') -> 'GreenElement':
        return multiply(self, other)

    def __str__(self):
        parts = []
        for x, w in self.terms():
            if not w:
                parts.append(str(x))
            else:
                parts.append(word_name(w) if x == 1 else f'{x}*{word_name(w)}')
        return ' + '.join(parts).replace('+ -', '- ') or '0'

    @property
    def label(self) -> str:
        parts = []
        for x, w in self.terms():
            parts.append(word_label(w) if x == 1 else f'{x}·{word_label(w)}')
        return ' + '.join(parts) or '0'


# ----------
# Normalizer
# ----------

Rewrite = List[Tuple[Fraction, Word]]

_reduced: Dict[Tuple[Word, int, int], Dict[Word, Fraction]] = {}
_reduced_lock = Lock()


def _split(w: Word):
    ws = [g for g in w if g.family == Family.W]
    es = [g for g in w if g.family == Family.E]
    hs = [g for g in w if g.family == Family.H]
    ms = [g for g in w if g.family == Family.M]
    carriers = [g for g in w if g.family in _CARRIERS]
    return ws, es, hs, ms, carriers


def _canonical(p: int, q: int, m: int, a: int, b: int, carrier: Optional[Gen]) -> Word:
    """W0^p E0^q with the indices gathered on one generator"""
    gens = [W0] * p + [E0] * q
    if carrier is not None:
        gens += [M00] * m + [Gen(carrier.family, a, carrier.b + b)]
    elif m:
        gens += [M00] * (m - 1) + [Gen(Family.M, a, b)]
    elif q:
        gens = [W0] * p + [E0] * (q - 1) + [Gen(Family.E, a)]
    elif p:
        gens = [W0] * (p - 1) + [Gen(Family.W, a)]
    return word(gens)


def _gathered(w: Word) -> Optional[Word]:
    """w with its indices moved onto one generator, as the ``rewrite = false``
    product rows allow. None for words with a tauh factor or two carriers.
    """
    ws, es, hs, ms, carriers = _split(w)
    if hs or len(carriers) > 1:
        return None
    carrier = carriers[0] if carriers else None
    return _canonical(len(ws), len(es), len(ms), sum(g.a for g in w), sum(g.b for g in ms), carrier)


@dataclass(frozen=True)
class _WordSum:
    """Formal combination of words in one bidegree (rewrite right hand sides)"""
    bidegree: Tuple[int, int]
    terms: Tuple[Tuple[Word, Fraction], ...]

    def scale(self, x) -> '_WordSum':
        x = Fraction(x)
        return _WordSum(self.bidegree, tuple((w, x * c) for w, c in self.terms if x * c))

    def __add__(self, other: '_WordSum') -> '_WordSum':
        out = dict(self.terms)
        for w, c in other.terms:
            out[w] = out.get(w, Fraction(0)) + c
        return _WordSum(self.bidegree, tuple((w, c) for w, c in out.items() if c))


class _WordAlgebra:
    """Evaluates a right hand side without normalizing it"""

    @staticmethod
    def atom(name: str, indices: Tuple) -> _WordSum:
        g = gen_from_atom(name, indices)
        return _WordSum(g.bidegree, (((g,), Fraction(1)),))

    @staticmethod
    def one() -> _WordSum:
        return _WordSum((0, 0), (((), Fraction(1)),))

    @staticmethod
    def multiply(x: _WordSum, y: _WordSum) -> _WordSum:
        out = _WordSum((x.bidegree[0] + y.bidegree[0], x.bidegree[1] + y.bidegree[1]), ())
        for v, a in x.terms:
            for w, b in y.terms:
                out = out + _WordSum(out.bidegree, ((word(v + w), a * b),))
        return out

    @staticmethod
    def degree(x: _WordSum) -> Tuple[int, int]:
        return x.bidegree


_WORDS = _WordAlgebra()

LhsFactor = Tuple[Family, Tuple[Pattern, ...]]


@dataclass(frozen=True)
class _Rule:
    row: ProductRow
    lhs: Tuple[LhsFactor, ...]

    @property
    def text(self) -> str:
        return f'{self.row.lhs.text} -> {self.row.rhs.text}'


_compiled: Optional[Tuple[Tables, Tuple[_Rule, ...]]] = None
_compiled_lock = Lock()


def _compile(row: ProductRow) -> _Rule:
    lhs = []
    for name, patterns in row.pattern:
        if name not in FAMILY_BY_NAME:
            raise TableFormatException(f'rewrite row "{row.lhs.text}": unknown generator {name}')
        family = FAMILY_BY_NAME[name]
        arity = 1 if family in _ONE_INDEX else 2
        if len(patterns) != arity:
            raise TableFormatException(f'rewrite row "{row.lhs.text}": {name} takes {arity} index(es)')
        lhs.append((family, patterns))
    unbound = [v for v in row.rhs.variables() if v not in row.lhs.variables()]
    if unbound:
        raise TableFormatException(f'rewrite row "{row.lhs.text}": {", ".join(unbound)} not bound by the lhs')
    return _Rule(row, tuple(lhs))


def rewrite_rules() -> Tuple[_Rule, ...]:
    """The rewrite rows of the loaded table file, in file order"""
    global _compiled
    tables = load_tables()
    with _compiled_lock:
        if _compiled is not None and _compiled[0] is tables:
            return _compiled[1]
    rules = tuple(_compile(row) for row in tables.rewrites)
    logger.debug(f'[green] {len(rules)} rewrite rules from {tables.path}')
    with _compiled_lock:
        _compiled = (tables, rules)
    return rules


def _indices(g: Gen) -> Tuple[int, ...]:
    return (g.a,) if g.family in _ONE_INDEX else (g.a, g.b)


def _bind(lhs: Sequence[LhsFactor], gens: List[Gen], env: Env) -> Optional[Tuple[Env, List[Gen]]]:
    """Assign the lhs factors to distinct generators of gens; returns the
    variable values and the generators left over, or None
    """
    if not lhs:
        return env, gens
    (family, patterns), more = lhs[0], lhs[1:]
    seen = set()
    for i, g in enumerate(gens):
        if g.family != family or g in seen:
            continue
        seen.add(g)
        bound: Optional[Env] = env
        for p, value in zip(patterns, _indices(g)):
            bound = p.match(value, bound)
            if bound is None:
                break
        if bound is None:
            continue
        found = _bind(more, gens[:i] + gens[i + 1:], bound)
        if found is not None:
            return found
    return None


def _apply(rule: _Rule, w: Word) -> Optional[Rewrite]:
    found = _bind(rule.lhs, list(w), {})
    if found is None:
        return None
    env, rest = found
    s, c = word_bidegree(w)
    rs, rc = word_bidegree(rest)
    rhs = rule.row.rhs.evaluate(_WORDS, env)
    if isinstance(rhs, Fraction):
        if rhs and (s, c) != (rs, rc):
            raise TableFormatException(f'rewrite row {rule.text}: scalar right hand side in degree ({s - rs},{c - rc})')
        return [(rhs, word(rest))] if rhs else []
    if rhs.bidegree != (s - rs, c - rc):
        raise TableFormatException(f'rewrite row {rule.text} with {env}: {rhs.bidegree} != ({s - rs},{c - rc})')
    return [(coeff, word(rest + list(v))) for v, coeff in rhs.terms]


def _step(w: Word) -> Optional[Rewrite]:
    """One rewrite of a word that is not a basis word; None when nothing applies.
    Indices are gathered first, then the rewrite rows are tried in file order.
    """
    gathered = _gathered(w)
    if gathered is not None and gathered != w:
        return [(Fraction(1), gathered)]
    for rule in rewrite_rules():
        out = _apply(rule, w)
        if out is not None and out != [(Fraction(1), w)]:
            return out
    return None


def _reduce(w: Word) -> Dict[Word, Fraction]:
    key = (w, Config.k, Config.precision)
    with _reduced_lock:
        if key in _reduced:
            return _reduced[key]
    s, c = word_bidegree(w)
    level = _level(s, c)
    if level.module.is_zero():
        out: Dict[Word, Fraction] = {}
    elif level.index(w) is not None:
        out = {w: Fraction(1)}
    else:
        steps = _step(w)
        if steps is None or steps == [(Fraction(1), w)]:
            raise UnreachableProductError(f'{word_name(w)} at ({s},{c}) reaches no basis word')
        out = {}
        for coeff, nxt in steps:
            if coeff == 0:
                continue
            for bw, x in _reduce(nxt).items():
                out[bw] = out.get(bw, Fraction(0)) + coeff * x
    with _reduced_lock:
        _reduced[key] = out
    return out


def normalize(w: Sequence[Gen], coeff=1) -> GreenElement:
    """coeff times the product of the generators, as a GreenElement"""
    w = word(w)
    s, c = word_bidegree(w)
    words = basis_words(s, c)
    x = Scalar.of(coeff).value
    reduced = _reduce(w)
    return GreenElement(s, c, tuple(x * reduced.get(bw, Fraction(0)) for bw in words))


def multiply(x: GreenElement, y: GreenElement) -> GreenElement:
    out = GreenElement.zero(x.s + y.s, x.c + y.c)
    for a, v in x.terms():
        for b, w in y.terms():
            out = out + normalize(v + w, a * b)
    return out


# --------
# Algebras
# --------

class GreenAlgebra:
    """Expression evaluation in pi_{*,*}"""

    @staticmethod
    def atom(name: str, indices: Tuple) -> GreenElement:
        return normalize((gen_from_atom(name, indices),))

    @staticmethod
    def one() -> GreenElement:
        return GreenElement.one()

    @staticmethod
    def multiply(x: GreenElement, y: GreenElement) -> GreenElement:
        return multiply(x, y)

    @staticmethod
    def degree(x: GreenElement) -> Tuple[int, int]:
        return x.bidegree


class ClassicalAlgebra:
    """Expression evaluation in pi_* S and its twisted companion"""

    @staticmethod
    def atom(name: str, indices: Tuple) -> SElement:
        makers = {'rho': s_rho, 'mu': s_mu, 'xi': s_xi}
        if name == 'g' and not indices:
            return s_g()
        if name not in makers:
            raise ExpressionParseException(f'unknown classical generator {name}')
        if len(indices) != 1:
            raise ExpressionParseException(f'{name} takes one index, got {len(indices)}')
        return makers[name](Fraction(indices[0]))

    @staticmethod
    def one() -> SElement:
        return s_one()

    @staticmethod
    def multiply(x: SElement, y: SElement) -> SElement:
        return s_multiply(x, y)

    @staticmethod
    def degree(x: SElement) -> Tuple[int, Fraction]:
        return (x.stem, x.twist)


GREEN = GreenAlgebra()
CLASSICAL = ClassicalAlgebra()


def _as_green(value, s: int, c: int) -> GreenElement:
    if isinstance(value, Fraction):
        if value == 0:
            return GreenElement.zero(s, c)
        value = GreenElement.one().scale(value)
    if value.bidegree != (s, c):
        raise VerificationFailure(message=f'table entry lands in {value.bidegree}, expected ({s},{c})')
    return value


def _as_classical(value, stem: int) -> SElement:
    if isinstance(value, Fraction):
        if value == 0:
            return SElement.zero(stem, 0)
        value = s_one().scale(value)
    if (value.stem, value.twist) != (stem, 0):
        raise VerificationFailure(message=f'table entry lands in stem {value.stem} twist {value.twist}, '
                                          f'expected stem {stem}')
    return value


def parse_green(text: str) -> GreenElement:
    """An element of pi_{*,*} written in the generator grammar"""
    value = Expression(text).evaluate(GREEN)
    return GreenElement.one().scale(value) if isinstance(value, Fraction) else value


def parse_classical(text: str) -> SElement:
    """An element of pi_* S written with rho[x], mu[x], xi[x], g"""
    value = Expression(text).evaluate(CLASSICAL)
    return s_one().scale(value) if isinstance(value, Fraction) else value


# -----------------------------
# Restriction, transfer, unit
# -----------------------------

def restriction(x: GreenElement) -> SElement:
    """The forgetful map to pi_s S, from the image column of the additive records"""
    level = _level(x.s, x.c)
    out = SElement.zero(x.s, 0)
    for coeff, (row, env, i) in zip(x.coeffs, level.rows):
        if coeff:
            image = _as_classical(row.images[i].evaluate(CLASSICAL, dict(env)), x.s)
            out = out + image.scale(coeff)
    return out


def restrict_word(w: Word) -> SElement:
    """Product of the restrictions of the generators of w"""
    tables = load_tables()
    out = s_one()
    for g in w:
        if g.family == Family.H and g.a == 0:
            h = s_one().scale(2) - s_multiply(restrict_word((W0,)), restrict_word((E0,)))
            out = s_multiply(out, h)
            continue
        row = tables.generator(ASCII[g.family])
        env = dict(zip(row.generator.variables(), (g.a, g.b)))
        out = s_multiply(out, _as_classical(row.image.evaluate(CLASSICAL, env), g.bidegree[0]))
    return out


def _check_untwisted(alpha: SElement, what: str):
    if alpha.twist != 0:
        raise InvalidValueException(f'{what} is only defined on untwisted classes, got twist {alpha.twist}')


def transfer(c: int, alpha: SElement) -> GreenElement:
    """tr_c: pi_s S -> pi_{s,c}, looked up per basis class and extended linearly"""
    _check_untwisted(alpha, 'the transfer')
    s = alpha.stem
    out = GreenElement.zero(s, c)
    for coeff, b in alpha.terms():
        target = SElement.of(b)
        for row in load_tables().transfers:
            env = row.match(s, c)
            if env is None:
                continue
            if _as_classical(row.alpha.evaluate(CLASSICAL, env), s) == target:
                out = out + _as_green(row.result.evaluate(GREEN, env), s, c).scale(coeff)
                break
        else:
            raise UnspecifiedProductException(f'no transfer recorded for {b.name} into coweight {c}')
    return out


def unit(alpha: SElement) -> GreenElement:
    """The ring map pi_n S -> pi_{n,n}"""
    _check_untwisted(alpha, 'the unit map')
    n = alpha.stem
    out = GreenElement.zero(n, n)
    for coeff, b in alpha.terms():
        target = SElement.of(b)
        for row in load_tables().unit:
            env = row.match(n)
            if env is None:
                continue
            if _as_classical(row.generator.evaluate(CLASSICAL, env), n) == target:
                out = out + _as_green(row.image.evaluate(GREEN, env), n, n).scale(coeff)
                break
        else:
            raise UnspecifiedProductException(f'no unit image recorded for {b.name}')
    return out


def weyl_action(c: int, alpha: SElement) -> SElement:
    """alpha -> res(tr_c(alpha)) - alpha"""
    return restriction(transfer(c, alpha)) - alpha


# -----------
# tau^4 shift
# -----------

def _shift_word(w: Word) -> Word:
    gens = list(w)
    for i, g in enumerate(gens):
        if g.family in _CARRIERS:
            gens[i] = Gen(g.family, g.a, g.b + 1)
            return word(gens)
    for i, g in enumerate(gens):
        if g.family == Family.H:
            gens[i] = Gen(Family.H, g.a + 2)
            return word(gens)
    ms = [i for i, g in enumerate(gens) if g.family == Family.M]
    if ms:
        i = next((i for i in ms if gens[i] != M00), ms[-1])
        gens[i] = Gen(Family.M, gens[i].a, gens[i].b + 1)
        return word(gens)
    raise InvalidValueException(f'{word_name(w)} has no coweight parameter to shift')


def tau4_shift(x: GreenElement) -> GreenElement:
    """Move a rho^3-torsion element four coweights up by shifting its parameters"""
    if x.c % 4 == 3:
        raise InvalidValueException(f'tau^4 shift is not defined in coweight {x.c} = -1 mod 4')
    out = GreenElement.zero(x.s, x.c + 4)
    for coeff, w in x.terms():
        if not normalize(w + (W0, W0, W0)).is_zero():
            raise InvalidValueException(f'{word_name(w)} is not rho^3-torsion')
        out = out + normalize(_shift_word(w), coeff)
    return out


# ------------
# Mackey level
# ------------

def s_relations(stem: int) -> List[List[Fraction]]:
    """Relations of pi_stem S in the order of s_basis"""
    basis = s_basis(stem, 0)
    rels = []
    for i, b in enumerate(basis):
        e = b.exponent()
        if e != INFINITY:
            rels.append([Fraction(2 ** e) if k == i else Fraction(0) for k in range(len(basis))])
    return rels


def level_relations(s: int, c: int) -> List[List[Fraction]]:
    return [list(r) for r in group(s, c).relations]


def rho_images(s: int, c: int) -> List[List[Fraction]]:
    """Coefficients of w[0] * basis of pi_{s,c}, in pi_{s-1,c}"""
    return [list(normalize(w + (W0,)).coeffs) for w in basis_words(s, c)]


@dataclass(frozen=True)
class MackeyLevel:
    """pi_{s,c} over pi_s S with restriction and transfer"""
    s: int
    c: int
    top: FGModule
    bottom: FGModule
    res: ModuleMap
    tr: ModuleMap

    def restriction_kernel_is_rho_image(self) -> bool:
        dim = len(self.top.basis_names)
        rels = level_relations(self.s, self.c)
        if not dim:
            return True
        kernel = map_kernel(self.res.images(), dim, s_relations(self.s), rels)
        image = rho_images(self.s + 1, self.c) + rels
        return lattice_equal(kernel, image, dim)

    def transfer_image_is_rho_kernel(self) -> bool:
        dim = len(self.top.basis_names)
        rels = level_relations(self.s, self.c)
        if not dim:
            return True
        kernel = map_kernel(rho_images(self.s, self.c), dim, level_relations(self.s - 1, self.c), rels)
        image = [list(v) for v in self.tr.images()] + rels
        return lattice_equal(kernel, image, dim)


def mackey_level(s: int, c: int) -> MackeyLevel:
    top = group(s, c)
    bottom_basis = s_basis(s, 0)
    bottom = s_group(s, 0)
    res_cols = [restriction(GreenElement.of(w)).coeffs for w in basis_words(s, c)]
    tr_cols = [transfer(c, SElement.of(b)).coeffs for b in bottom_basis]
    res = ModuleMap(top, bottom, tuple(tuple(r) for r in from_columns(res_cols, len(bottom_basis))))
    tr = ModuleMap(bottom, top, tuple(tuple(r) for r in from_columns(tr_cols, len(top.basis_names))))
    return MackeyLevel(s, c, top, bottom, res, tr)


# ---------------
# Lookup helpers
# ---------------

def detected_by(name: str) -> str:
    """The KO class detecting a basis word, as recorded with its additive record"""
    w = parse_word(name)
    s, c = word_bidegree(w)
    level = _level(s, c)
    i = level.index(w)
    if i is None:
        raise InvalidValueException(f'{word_name(w)} is not a basis word of pi_({s},{c})')
    row, env, _ = level.rows[i]
    params = ', '.join(f'{k}={v}' for k, v in env)
    return f'{row.detected} ({params})' if params else row.detected


# -------------------
# Descent cross-check
# -------------------

class DescentCheck(NamedTuple):
    s: int
    c: int
    table: FGModule
    kernel: FGModule
    cokernel: FGModule
    table_rho_rank: int = 0
    descent_rho_rank: int = 0

    @property
    def descent(self) -> FGModule:
        return FGModule(free_rank=self.kernel.free_rank + self.cokernel.free_rank,
                        torsion=self.kernel.torsion + self.cokernel.torsion)

    @property
    def ok(self) -> bool:
        return self.descent.same_group(self.table) and self.table_rho_rank == self.descent_rho_rank


def _rank_mod(vectors: Sequence[Sequence], relations: Sequence[Sequence], dim: int) -> int:
    """Rank over Q of span(vectors) in Z^dim modulo span(relations)"""
    if not dim:
        return 0
    rels = [list(r) for r in relations]
    return Lattice([list(v) for v in vectors] + rels, dim).rank() - Lattice(rels, dim).rank()


def _combine(vec: Sequence, images: Sequence[Sequence], dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    for x, img in zip(vec, images):
        if x:
            out = [a + Fraction(x) * Fraction(b) for a, b in zip(out, img)]
    return out


def table_rho_rank(s: int, c: int) -> int:
    """Rank of w[0]: pi_{s,c} -> pi_{s-1,c} read from the tables"""
    return _rank_mod(rho_images(s, c), level_relations(s - 1, c), len(basis_words(s - 1, c)))


def descent_rho_rank(s: int, c: int) -> int:
    """Rank of rho on the kernel line at (s, c) plus rho on the cokernel line
    from (s+1, c+1). Rationally the descent sequence splits rho-equivariantly,
    so this is the rank of w[0] on pi_{s,c}.
    """
    dim, tdim = len(ko_basis(s, c)), len(ko_basis(s - 1, c))
    rank = 0
    if dim and tdim:
        rels = module_relations(ko_group(s, c))
        trels = module_relations(ko_group(s - 1, c))
        phi = psi_minus_one_matrix(s, c)
        ker = map_kernel(columns(phi.matrix, dim), dim, rels, rels)
        images = ko_rho_images(s, c)
        rank += _rank_mod([_combine(v, images, tdim) for v in ker], trels, tdim)
    dim, tdim = len(ko_basis(s + 1, c + 1)), len(ko_basis(s, c + 1))
    if dim and tdim:
        trels = module_relations(ko_group(s, c + 1))
        boundary = columns(psi_minus_one_matrix(s, c + 1).matrix, tdim)
        rank += _rank_mod(ko_rho_images(s + 1, c + 1), [list(b) for b in boundary] + trels, tdim)
    return rank


def verify_hfpss(s: int, c: int) -> DescentCheck:
    """ker(psi^k - 1) on KO(s, c) plus coker(psi^k - 1) on KO(s+1, c+1), with
    the trivial extension, against group(s, c). The rank of w[0] out of
    (s, c) is compared as well.
    """
    ker, _ = ker_coker_endo(ko_group(s, c), psi_minus_one_matrix(s, c))
    _, coker = ker_coker_endo(ko_group(s + 1, c + 1), psi_minus_one_matrix(s + 1, c + 1))
    check = DescentCheck(s, c, group(s, c), ker, coker, table_rho_rank(s, c), descent_rho_rank(s, c))
    logger.debug(f'[hfpss] ({s},{c}): table {check.table}, descent {check.descent}, '
                 f'w[0] rank {check.table_rho_rank}/{check.descent_rho_rank}')
    return check
