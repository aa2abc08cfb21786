# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# tables.py - Loader for the shipped Green functor table file
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 11-Sep-2026   gsd 0.1 Parse additive, product, transfer and unit records
# 24-Sep-2026   gsd 0.2 Load once per process behind a lock, version check
# 03-Oct-2026   gsd 0.3 GREENSPHERE_TABLES override via config.tables_path()
# 18-Oct-2026   gsd 0.4 Product rows carry lhs patterns, rewrite = false marks index moves
#
import logging
import re
from dataclasses import dataclass
from threading import Lock
from typing import Iterator, Optional, Tuple

import toml

from .config import tables_path
from .exceptions import ExpressionParseException, TableFormatException
from .expr import Env, Expression, Linear, parse_index

logger = logging.getLogger("greensphere")

SUPPORTED_VERSION = 1

_WHERE = re.compile(r'^\s*([a-z])\s*(==|!=)\s*(-?\d+)\s*$')


# ---------
# Patterns
# ---------

@dataclass(frozen=True)
class Pattern:
    """A degree pattern such as ``8a-1``: at most one variable"""
    text: str
    linear: Linear

    @staticmethod
    def parse(text: str) -> 'Pattern':
        return Pattern.of(parse_index(text), str(text))

    @staticmethod
    def of(lin: Linear, text: str = None) -> 'Pattern':
        text = str(lin) if text is None else text
        if len(lin.terms) > 1:
            raise TableFormatException(f'pattern "{text}" has more than one variable')
        if lin.terms and lin.terms[0][1].denominator != 1:
            raise TableFormatException(f'pattern "{text}" has a fractional slope')
        return Pattern(text, lin)

    def match(self, value: int, env: Env) -> Optional[Env]:
        """env extended by the variable value making the pattern equal value, or None"""
        if not self.linear.terms:
            return env if self.linear.const == value else None
        var, slope = self.linear.terms[0]
        if var in env:
            return env if self.linear.evaluate(env) == value else None
        x = (value - self.linear.const) / slope
        if x.denominator != 1:
            return None
        out = dict(env)
        out[var] = int(x)
        return out


@dataclass(frozen=True)
class Where:
    var: str
    op: str
    value: int

    @staticmethod
    def parse(text: Optional[str]) -> Optional['Where']:
        if not text:
            return None
        m = _WHERE.match(text)
        if m is None:
            raise TableFormatException(f'cannot read condition "{text}"')
        return Where(m.group(1), m.group(2), int(m.group(3)))

    def holds(self, env: Env) -> bool:
        equal = env.get(self.var) == self.value
        return equal if self.op == '==' else not equal


def _match(patterns: Tuple[Pattern, ...], values: Tuple[int, ...], where: Optional[Where]) -> Optional[Env]:
    env: Env = {}
    for p, v in zip(patterns, values):
        env = p.match(v, env)
        if env is None:
            return None
    if where is not None and not where.holds(env):
        return None
    return env


# -------
# Records
# -------

@dataclass(frozen=True)
class AdditiveRow:
    s: Pattern
    c: Pattern
    where: Optional[Where]
    words: Tuple[Expression, ...]
    relations: Tuple[Tuple[Expression, ...], ...]
    images: Tuple[Expression, ...]
    detected: str

    def match(self, s: int, c: int) -> Optional[Env]:
        return _match((self.s, self.c), (s, c), self.where)


LhsAtom = Tuple[str, Tuple[Pattern, ...]]


@dataclass(frozen=True)
class ProductRow:
    """``lhs = rhs``. A rewrite row is applied as the rule lhs -> rhs and
    its lhs is kept as (generator name, index patterns) per factor, powers
    expanded. A row with ``rewrite = false`` only moves indices between
    factors and stays a relation.
    """
    lhs: Expression
    rhs: Expression
    rewrite: bool = True
    pattern: Tuple[LhsAtom, ...] = ()

    @property
    def variables(self) -> Tuple[str, ...]:
        found = list(self.lhs.variables())
        found += [v for v in self.rhs.variables() if v not in found]
        return tuple(found)


@dataclass(frozen=True)
class GeneratorRow:
    generator: Expression
    s: Pattern
    c: Pattern
    where: Optional[Where]
    image: Expression

    @property
    def name(self) -> str:
        return self.generator.tree[1][0][1][1]


@dataclass(frozen=True)
class TransferRow:
    s: Pattern
    c: Pattern
    alpha: Expression
    result: Expression

    def match(self, s: int, c: int) -> Optional[Env]:
        return _match((self.s, self.c), (s, c), None)


@dataclass(frozen=True)
class UnitRow:
    stem: Pattern
    generator: Expression
    image: Expression

    def match(self, stem: int) -> Optional[Env]:
        return _match((self.stem,), (stem,), None)


@dataclass(frozen=True)
class Tables:
    path: str
    version: int
    additive: Tuple[AdditiveRow, ...]
    products: Tuple[ProductRow, ...]
    generators: Tuple[GeneratorRow, ...]
    transfers: Tuple[TransferRow, ...]
    unit: Tuple[UnitRow, ...]

    def additive_rows(self, s: int, c: int) -> Iterator[Tuple[AdditiveRow, Env]]:
        for row in self.additive:
            env = row.match(s, c)
            if env is not None:
                yield row, env

    @property
    def rewrites(self) -> Tuple[ProductRow, ...]:
        return tuple(row for row in self.products if row.rewrite)

    def generator(self, name: str) -> GeneratorRow:
        for row in self.generators:
            if row.name == name:
                return row
        raise TableFormatException(f'no multiplicative generator row for {name}')


# -------
# Parsing
# -------

def _field(rec: dict, key: str, where: str, default=None):
    if key in rec:
        return rec[key]
    if default is not None:
        return default
    raise TableFormatException(f'{where}: missing field "{key}"')


def _expr(text, where: str) -> Expression:
    try:
        return Expression(str(text))
    except ExpressionParseException as ex:
        raise TableFormatException(f'{where}: {ex.message}')


def _pattern(text, where: str) -> Pattern:
    try:
        return Pattern.parse(text)
    except ExpressionParseException as ex:
        raise TableFormatException(f'{where}: {ex.message}')


def _additive(rec: dict, i: int) -> AdditiveRow:
    where = f'additive record {i}'
    words = tuple(_expr(w, where) for w in _field(rec, 'words', where))
    relations = []
    for vec in _field(rec, 'relations', where):
        if len(vec) != len(words):
            raise TableFormatException(f'{where}: relation {vec} has {len(vec)} entries for {len(words)} words')
        relations.append(tuple(_expr(x, where) for x in vec))
    images = tuple(_expr(x, where) for x in _field(rec, 'images', where))
    if len(images) != len(words):
        raise TableFormatException(f'{where}: {len(images)} images for {len(words)} words')
    return AdditiveRow(_pattern(_field(rec, 's', where), where), _pattern(_field(rec, 'c', where), where),
                       Where.parse(rec.get('where')), words, tuple(relations), images,
                       str(rec.get('detected', '')))


def _product(rec: dict, i: int) -> ProductRow:
    where = f'product {i}'
    lhs = _expr(_field(rec, 'lhs', where), where)
    rhs = _expr(_field(rec, 'rhs', where), where)
    rewrite = rec.get('rewrite', True)
    if not isinstance(rewrite, bool):
        raise TableFormatException(f'{where}: rewrite must be true or false, got {rewrite!r}')
    if not rewrite:
        return ProductRow(lhs, rhs, False)
    try:
        atoms = lhs.atoms()
    except ExpressionParseException as ex:
        raise TableFormatException(f'{where}: a rewrite lhs must be a product of generators ({ex.message})')
    pattern = []
    for name, indices in atoms:
        try:
            pattern.append((name, tuple(Pattern.of(i) for i in indices)))
        except TableFormatException as ex:
            raise TableFormatException(f'{where}: {ex.message}')
    return ProductRow(lhs, rhs, True, tuple(pattern))


def parse_tables(data: dict, path: str = '<memory>') -> Tables:
    """Build :py:class:`Tables` from the decoded toml; raises TableFormatException"""
    version = data.get('version')
    if version != SUPPORTED_VERSION:
        raise TableFormatException(f'{path}: table version {version}, this engine reads {SUPPORTED_VERSION}')
    try:
        additive = tuple(_additive(r, i) for i, r in enumerate(data.get('additive', [])))
        products = tuple(_product(r, i) for i, r in enumerate(data.get('products', [])))
        generators = tuple(GeneratorRow(_expr(_field(r, 'generator', f'generator {i}'), f'generator {i}'),
                                        _pattern(_field(r, 's', f'generator {i}'), f'generator {i}'),
                                        _pattern(_field(r, 'c', f'generator {i}'), f'generator {i}'),
                                        Where.parse(r.get('where')),
                                        _expr(_field(r, 'image', f'generator {i}'), f'generator {i}'))
                           for i, r in enumerate(data.get('generators', [])))
        transfers = tuple(TransferRow(_pattern(_field(r, 's', f'transfer {i}'), f'transfer {i}'),
                                      _pattern(_field(r, 'c', f'transfer {i}'), f'transfer {i}'),
                                      _expr(_field(r, 'alpha', f'transfer {i}'), f'transfer {i}'),
                                      _expr(_field(r, 'result', f'transfer {i}'), f'transfer {i}'))
                          for i, r in enumerate(data.get('transfers', [])))
        unit = tuple(UnitRow(_pattern(_field(r, 'stem', f'unit {i}'), f'unit {i}'),
                             _expr(_field(r, 'generator', f'unit {i}'), f'unit {i}'),
                             _expr(_field(r, 'image', f'unit {i}'), f'unit {i}'))
                     for i, r in enumerate(data.get('unit', [])))
    except (TypeError, AttributeError) as ex:
        raise TableFormatException(f'{path}: malformed record ({ex})')
    if not additive:
        raise TableFormatException(f'{path}: no additive records')
    return Tables(path, version, additive, products, generators, transfers, unit)


_lock = Lock()
_tables: Optional[Tables] = None


def load_tables(path: str = None) -> Tables:
    """The parsed table file, read once per process. An explicit path is
    always read and replaces the cached tables.
    """
    global _tables
    with _lock:
        if _tables is not None and path is None:
            return _tables
        path = path or tables_path()
        try:
            data = toml.load(path)
        except (OSError, toml.TomlDecodeError) as ex:
            raise TableFormatException(f'cannot read table file {path}: {ex}')
        _tables = parse_tables(data, path)
        logger.info(f'[tables] {path} version {_tables.version}: {len(_tables.additive)} additive, '
                    f'{len(_tables.products)} product ({len(_tables.rewrites)} rewrite), '
                    f'{len(_tables.transfers)} transfer records')
        return _tables


def reset_tables():
    """Forget the cached tables (the next load_tables() reads the file again)"""
    global _tables
    with _lock:
        _tables = None
