# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# expr.py - Generator grammar for element expressions and table entries
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 09-Sep-2026   gsd 0.1 Tokenizer and recursive descent for name[a,b] products
# 20-Sep-2026   gsd 0.2 2^j(...) and u(...) scalar factors for the table file
# 08-Oct-2026   gsd 0.3 Linear index expressions with implicit products (8a-1)
# 18-Oct-2026   gsd 0.4 atoms(): unevaluated factors for matching rewrite rows
#
"""Expressions in the generator grammar.

One grammar serves the command line and the table file::

    sum     := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := INT | '2^' power | 'u(' index ',' index ')' | atom | '(' sum ')'
    power   := INT | 'j(' index ')' | '(' exp (('+' | '-') exp)* ')'
    exp     := INT | 'j(' index ')'
    atom    := NAME ['[' index (',' index)* ']'] ['^' INT]
    index   := linear expression in the table variables, e.g. 8a-1, 2a+1, 1/2

``2^e`` with an infinite exponent (``j(0)``) is 0. Evaluation is delegated
to an algebra object with ``atom(name, indices)``, ``one()``,
``multiply(x, y)`` and ``degree(x)``; pure scalars stay Fractions until they
are added to an element.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exceptions import ExpressionParseException
from .twoadic import INFINITY, j, pow2, u

_TOKEN = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))')
_FUNCTIONS = ('j', 'u')

Env = Dict[str, Union[int, Fraction]]


def tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(('INT', num))
        elif name is not None:
            tokens.append(('NAME', name))
        elif sym is not None:
            if sym not in '^*+-()[],/':
                raise ExpressionParseException(f'unexpected character {sym!r} in "{text}"')
            tokens.append(('SYM', sym))
        pos = m.end()
    return tokens


# -----------------
# Index expressions
# -----------------

@dataclass(frozen=True)
class Linear:
    """const + sum of coeff * variable"""
    const: Fraction
    terms: Tuple[Tuple[str, Fraction], ...] = ()

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.terms)

    def evaluate(self, env: Env) -> Union[int, Fraction]:
        total = Fraction(self.const)
        for var, coeff in self.terms:
            if var not in env:
                raise ExpressionParseException(f'variable {var} has no value')
            total += coeff * Fraction(env[var])
        return int(total) if total.denominator == 1 else total

    def __add__(self, other: 'Linear') -> 'Linear':
        terms = dict(self.terms)
        for var, coeff in other.terms:
            terms[var] = terms.get(var, Fraction(0)) + coeff
        return Linear(self.const + other.const, tuple(sorted((v, x) for v, x in terms.items() if x)))

    def scale(self, x: Fraction) -> 'Linear':
        return Linear(self.const * x, tuple((v, c * x) for v, c in self.terms if c * x))

    def __str__(self):
        parts = []
        for var, coeff in self.terms:
            parts.append(var if coeff == 1 else f'-{var}' if coeff == -1 else f'{coeff}{var}')
        if self.const or not parts:
            parts.append(str(self.const))
        return '+'.join(parts).replace('+-', '-')


# ---------
# The parser
# ---------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def _fail(self, what: str):
        raise ExpressionParseException(f'{what} at token {self.pos} of "{self.text}"')

    def peek(self, offset: int = 0) -> Optional[Tuple[str, str]]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[1] == value and tok[0] != 'INT':
            self.pos += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            self._fail(f'expected "{value}"')

    def integer(self) -> int:
        tok = self.peek()
        if tok is None or tok[0] != 'INT':
            self._fail('expected an integer')
        self.pos += 1
        return int(tok[1])

    def done(self):
        if self.pos != len(self.tokens):
            self._fail('trailing input')

    # index := ['-'] iterm (('+'|'-') iterm)*
    def index(self) -> Linear:
        sign = -1 if self.accept('-') else 1
        total = self.iterm().scale(Fraction(sign))
        while True:
            if self.accept('+'):
                total = total + self.iterm()
            elif self.accept('-'):
                total = total + self.iterm().scale(Fraction(-1))
            else:
                return total

    # iterm := INT ['/' INT] [NAME] | NAME
    def iterm(self) -> Linear:
        tok = self.peek()
        if tok is None:
            self._fail('index expected')
        coeff = Fraction(1)
        if tok[0] == 'INT':
            coeff = Fraction(self.integer())
            if self.accept('/'):
                coeff /= self.integer()
            tok = self.peek()
            if tok is None or tok[0] != 'NAME':
                return Linear(coeff)
        if tok[0] != 'NAME' or tok[1] in _FUNCTIONS:
            self._fail('index expected')
        self.pos += 1
        return Linear(Fraction(0), ((tok[1], coeff),))

    def sum(self):
        node = ['-' if self.accept('-') else '+', self.term()]
        terms = [tuple(node)]
        while True:
            if self.accept('+'):
                terms.append(('+', self.term()))
            elif self.accept('-'):
                terms.append(('-', self.term()))
            else:
                return ('sum', tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.accept('*'):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ('prod', tuple(factors))

    def factor(self):
        tok = self.peek()
        if tok is None:
            self._fail('unexpected end')
        if tok[0] == 'INT':
            value = self.integer()
            if self.accept('^'):
                if value != 2:
                    self._fail('only powers of 2 are allowed')
                return ('pow2', self.power())
            return ('int', value)
        if self.accept('('):
            node = self.sum()
            self.expect(')')
            return node
        if tok[0] == 'NAME':
            self.pos += 1
            name = tok[1]
            if name == 'u':
                self.expect('(')
                first = self.index()
                self.expect(',')
                second = self.index()
                self.expect(')')
                return ('u', first, second)
            if name == 'j':
                self._fail('j(...) may only appear in an exponent')
            indices = []
            if self.accept('['):
                indices.append(self.index())
                while self.accept(','):
                    indices.append(self.index())
                self.expect(']')
            power = self.integer() if self.accept('^') else 1
            if power < 1:
                self._fail('generator powers must be positive')
            return ('atom', name, tuple(indices), power)
        self._fail(f'unexpected "{tok[1]}"')

    def power(self):
        if self.peek() is not None and self.peek()[0] == 'INT':
            return (('+', 'int', self.integer()),)
        if self.accept('('):
            parts = []
            sign = '-' if self.accept('-') else '+'
            parts.append((sign,) + self.exp())
            while True:
                if self.accept('+'):
                    parts.append(('+',) + self.exp())
                elif self.accept('-'):
                    parts.append(('-',) + self.exp())
                else:
                    break
            self.expect(')')
            return tuple(parts)
        return (('+',) + self.exp(),)

    def exp(self):
        if self.peek() is not None and self.peek()[0] == 'INT':
            return ('int', self.integer())
        self.expect('j')
        self.expect('(')
        idx = self.index()
        self.expect(')')
        return ('j', idx)


# -----------
# Expression
# -----------

class Expression:
    """A parsed expression; ``evaluate`` it against an algebra and variable values"""

    def __init__(self, text: str):
        self.text = str(text).strip()
        if not self.text:
            raise ExpressionParseException('empty expression')
        parser = _Parser(self.text)
        self.tree = parser.sum()
        parser.done()

    def __repr__(self):
        return f'Expression({self.text!r})'

    def variables(self) -> Tuple[str, ...]:
        found = []
        def walk(node):
            if isinstance(node, Linear):
                found.extend(v for v in node.variables if v not in found)
            elif isinstance(node, tuple):
                for child in node:
                    walk(child)
        walk(self.tree)
        return tuple(found)

    def atoms(self) -> List[Tuple[str, Tuple[Linear, ...]]]:
        """The expression as a bare product of generators: [(name, index
        expressions)], one entry per factor with powers expanded. Raises when
        it has scalars, sums or differences.
        """
        node = self.tree
        if len(node[1]) != 1 or node[1][0][0] != '+':
            raise ExpressionParseException(f'"{self.text}" is not a product of generators')
        node = node[1][0][1]
        factors = node[1] if node[0] == 'prod' else (node,)
        out = []
        for f in factors:
            if f[0] == 'int' and f[1] == 1:
                continue
            if f[0] != 'atom':
                raise ExpressionParseException(f'"{self.text}" is not a product of generators')
            _, name, indices, power = f
            out.extend([(name, indices)] * power)
        return out

    def monomial(self, env: Env) -> List[Tuple[str, Tuple]]:
        """atoms() with the indices evaluated"""
        return [(name, tuple(i.evaluate(env) for i in indices)) for name, indices in self.atoms()]

    def evaluate(self, algebra, env: Env = None):
        """Element of the algebra, or a Fraction when no generator occurs"""
        return self._eval(self.tree, algebra, env or {})

    def _eval(self, node, algebra, env: Env):
        kind = node[0]
        if kind == 'int':
            return Fraction(node[1])
        if kind == 'pow2':
            return self._pow2(node[1], env)
        if kind == 'u':
            a, b = node[1].evaluate(env), node[2].evaluate(env)
            if isinstance(a, Fraction) or isinstance(b, Fraction):
                raise ExpressionParseException(f'u({a},{b}) needs integer arguments')
            return u(a, b).value
        if kind == 'atom':
            _, name, indices, power = node
            x = algebra.atom(name, tuple(i.evaluate(env) for i in indices))
            out = x
            for _ in range(power - 1):
                out = algebra.multiply(out, x)
            return out
        if kind == 'prod':
            out = Fraction(1)
            for child in node[1]:
                out = self._times(out, self._eval(child, algebra, env), algebra)
            return out
        if kind == 'sum':
            out = None
            for sign, child in node[1]:
                value = self._eval(child, algebra, env)
                if sign == '-':
                    value = self._times(Fraction(-1), value, algebra)
                out = value if out is None else self._plus(out, value, algebra)
            return out
        raise ExpressionParseException(f'bad node {kind}')

    @staticmethod
    def _pow2(parts, env: Env) -> Fraction:
        e = 0
        for sign, kind, arg in parts:
            x = arg if kind == 'int' else j(arg.evaluate(env))
            if x == INFINITY:
                if sign == '-':
                    raise ExpressionParseException('2^(-j(0)) is not defined')
                return Fraction(0)
            e = e + x if sign == '+' else e - x
        return pow2(e)

    @staticmethod
    def _times(x, y, algebra):
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return x * y
        if isinstance(x, Fraction):
            return y.scale(x)
        if isinstance(y, Fraction):
            return x.scale(y)
        return algebra.multiply(x, y)

    @staticmethod
    def _plus(x, y, algebra):
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return x + y
        if isinstance(x, Fraction):
            x = algebra.one().scale(x)
        if isinstance(y, Fraction):
            y = algebra.one().scale(y)
        if algebra.degree(x) != algebra.degree(y):
            raise ExpressionParseException(
                f'adding degrees {algebra.degree(x)} and {algebra.degree(y)} in "{x} + {y}"')
        return x + y


def parse(text: str) -> Expression:
    return Expression(text)


def parse_index(text: str) -> Linear:
    """A bare index expression such as 8a-1"""
    parser = _Parser(str(text))
    lin = parser.index()
    parser.done()
    return lin
