# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# verify.py - Consistency suites over a window of bidegrees
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 08-Oct-2026   gsd 0.1 Suites for E2, d3, KO, descent and products
# 10-Oct-2026   gsd 0.2 Mackey axioms, transfers, restriction, subring, orders
# 12-Oct-2026   gsd 0.3 Fan out over a thread pool, locked report aggregator
# 18-Oct-2026   gsd 0.4 Crashed checks are failures, tables loaded before the fan-out
#
"""Each suite is a list of independent checks. A check returns None when it
passes and a one-line message when it does not; engine exceptions raised by
a check are failures too. Checks run on a ``ThreadPoolExecutor`` of
``Config.workers`` threads and report into one :py:class:`Report`.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from threading import Lock
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .classical_sphere import SElement, picard_class, s_basis, s_group, s_multiply
from .classical_sphere import mu as s_mu
from .classical_sphere import rho as s_rho
from .classical_sphere import xi as s_xi
from .config import Config
from .exceptions import EngineException, VerificationFailure
from .green_sphere import (GREEN, E0, W0, Family, Gen, GreenElement, _as_green, basis_words,
                           group, mackey_level, multiply, normalize, restrict_word, restriction,
                           transfer, unit, verify_hfpss, weyl_action, word_name)
from .ko_ring import E2Class, d3, divisible_by_rho, e2_page, e2_types, ko_group, named, reduced_ko0_order
from .tables import load_tables
from .twoadic import james_period

logger = logging.getLogger("greensphere")

SUITES = ('e2', 'd3', 'ko', 'hfpss', 'products', 'closure', 'axioms', 'restriction',
          'transfers', 'divisibility', 'orders', 'subring')

Check = Tuple[str, Callable[[], Optional[str]]]


# ------
# Report
# ------

@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)


class Report:
    """Aggregates check outcomes; the only state shared by the worker threads"""

    def __init__(self):
        self._lock = Lock()
        self.results: Dict[str, SuiteResult] = {}

    def record(self, suite: str, label: str, failure: Optional[str]):
        with self._lock:
            result = self.results.setdefault(suite, SuiteResult(suite))
            result.checked += 1
            if failure is not None:
                result.failures.append(f'{label}: {failure}')

    @property
    def ok(self) -> bool:
        return all(not r.failures for r in self.results.values())

    @property
    def failures(self) -> List[str]:
        return [f'[{r.name}] {f}' for r in self.results.values() for f in r.failures]

    def lines(self, max_report: int = None) -> List[str]:
        max_report = Config.max_report if max_report is None else max_report
        out = [f'{r.name:<13} {r.checked:>7} checked  {len(r.failures):>5} failed'
               for r in self.results.values()]
        failures = self.failures
        out += failures[:max_report]
        if len(failures) > max_report:
            out.append(f'... {len(failures) - max_report} more failures')
        return out

    def to_dict(self) -> dict:
        return {r.name: {'checked': r.checked, 'failures': list(r.failures)} for r in self.results.values()}


# -------
# Helpers
# -------

def _window(w: int) -> Iterator[Tuple[int, int]]:
    return itertools.product(range(-w, w + 1), repeat=2)


def _generators(r: int) -> List[Gen]:
    """All generators with parameters in [-r, r]"""
    gens = [Gen(Family.W, a) for a in range(-r, r + 1)]
    gens += [Gen(Family.E, a) for a in range(-r, r + 1)]
    gens += [Gen(Family.H, n) for n in range(-r, r + 1) if n]
    for f in (Family.M, Family.Z, Family.R, Family.X):
        gens += [Gen(f, a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]
    return gens


def _element(g: Gen) -> GreenElement:
    return normalize((g,))


def _differ(what: str, left, right) -> Optional[str]:
    return None if left == right else f'{what}: {left} != {right}'


# ------
# Suites
# ------

def _e2_checks(w: int) -> List[Check]:
    def check(s, c, n):
        e2_page(s, c, n)        # raises on disagreement
        return None
    return [(f'E2({s},{c},{n})', lambda s=s, c=c, n=n: check(s, c, n))
            for s, c in _window(w) for n in range(0, 7)]


def _d3_checks(w: int) -> List[Check]:
    def check(s, c, n):
        dim = len(e2_types(s, c, n))
        for i in range(dim):
            x = E2Class(s, c, n, tuple(int(i == k) for k in range(dim)))
            if not d3(d3(x)).is_zero():
                return f'd3(d3({x})) != 0'
        return None
    return [(f'd3 at ({s},{c},{n})', lambda s=s, c=c, n=n: check(s, c, n))
            for s, c in _window(w) for n in range(0, 4)]


def _ko_checks(w: int) -> List[Check]:
    def check(s, c):
        ko_group(s, c)          # raises when E4 does not assemble
        return None
    return [(f'KO({s},{c})', lambda s=s, c=c: check(s, c)) for s, c in _window(w)]


def _hfpss_checks(w: int) -> List[Check]:
    def check(s, c):
        result = verify_hfpss(s, c)
        if result.ok:
            return None
        if not result.descent.same_group(result.table):
            return f'table {result.table}, ker {result.kernel} + coker {result.cokernel}'
        return f'w[0] has rank {result.table_rho_rank} in the tables, {result.descent_rho_rank} by descent'
    return [(f'({s},{c})', lambda s=s, c=c: check(s, c)) for s, c in _window(w)]


def _product_checks(w: int) -> List[Check]:
    r = Config.product_range

    def check(row, env):
        lhs = row.lhs.evaluate(GREEN, env)
        if isinstance(lhs, Fraction):
            lhs = GreenElement.one().scale(lhs)
        rhs = _as_green(row.rhs.evaluate(GREEN, env), lhs.s, lhs.c)
        return _differ(f'{row.lhs.text} = {row.rhs.text}', lhs, rhs)

    checks = []
    for row in load_tables().products:
        names = row.variables
        for values in itertools.product(range(-r, r + 1), repeat=len(names)):
            env = dict(zip(names, values))
            checks.append((f'{row.lhs.text} {env}', lambda row=row, env=env: check(row, env)))
    return checks


def _closure_checks(w: int) -> List[Check]:
    gens = _generators(Config.closure_range)

    def check(x, y, z):
        ex, ey, ez = _element(x), _element(y), _element(z)
        left = multiply(multiply(ex, ey), ez)
        right = multiply(ex, multiply(ey, ez))
        middle = multiply(multiply(ex, ez), ey)
        return (_differ('(xy)z = x(yz)', left, right) or _differ('(xy)z = (xz)y', left, middle)
                or _differ('xy = yx', multiply(ex, ey), multiply(ey, ex)))

    return [(f'{x.ascii}*{y.ascii}*{z.ascii}', lambda x=x, y=y, z=z: check(x, y, z))
            for x, y, z in itertools.combinations_with_replacement(gens, 3)]


def _axiom_checks(w: int) -> List[Check]:
    checks: List[Check] = []

    def mackey(s, c):
        level = mackey_level(s, c)
        if not level.restriction_kernel_is_rho_image():
            return 'ker(res) != im(w[0])'
        if not level.transfer_image_is_rho_kernel():
            return 'im(tr) != ker(w[0])'
        return None

    def involution(s, c):
        for b in s_basis(s, 0):
            alpha = SElement.of(b)
            twice = weyl_action(c, weyl_action(c, alpha))
            if twice != alpha:
                return f'Weyl action on {b.name} squares to {twice}'
        return None

    def frobenius(g, t, c):
        x = _element(g)
        for b in s_basis(t, 0):
            alpha = SElement.of(b)
            left = transfer(c, s_multiply(restriction(x), alpha))
            right = multiply(x, transfer(c - x.c, alpha))
            msg = _differ(f'tr({g.ascii} {b.name})', left, right)
            if msg:
                return msg
        return None

    for s, c in _window(w):
        checks.append((f'Mackey ({s},{c})', lambda s=s, c=c: mackey(s, c)))
        checks.append((f'Weyl ({s},{c})', lambda s=s, c=c: involution(s, c)))
    for g in _generators(Config.closure_range):
        for t, c in _window(w):
            checks.append((f'Frobenius {g.ascii} stem {t} coweight {c}',
                           lambda g=g, t=t, c=c: frobenius(g, t, c)))
    return checks


def _restriction_checks(w: int) -> List[Check]:
    checks: List[Check] = []
    gens = _generators(Config.closure_range)

    def images(s, c):
        for bw in basis_words(s, c):
            msg = _differ(f'res({word_name(bw)})', restriction(GreenElement.of(bw)), restrict_word(bw))
            if msg:
                return msg
        return None

    def ring_map(x, y):
        ex, ey = _element(x), _element(y)
        return _differ(f'res({x.ascii}*{y.ascii})', restriction(multiply(ex, ey)),
                       s_multiply(restriction(ex), restriction(ey)))

    def hidden(a, b, c):
        product = normalize((Gen(Family.E, a), Gen(Family.E, b), Gen(Family.E, c)))
        return _differ(f'res(eta[{a}]eta[{b}]eta[{c}])', restriction(product), s_xi(a + b + c).scale(4))

    def unit_then_res(a):
        return (_differ(f'res(unit(rho[{a}]))', restriction(unit(s_rho(a))), s_rho(a))
                or _differ(f'res(unit(mu[{a}]))', restriction(unit(s_mu(a))), s_mu(a)))

    for s, c in _window(w):
        checks.append((f'images ({s},{c})', lambda s=s, c=c: images(s, c)))
    for x, y in itertools.combinations_with_replacement(gens, 2):
        checks.append((f'{x.ascii}*{y.ascii}', lambda x=x, y=y: ring_map(x, y)))
    for a, b, c in itertools.product(range(-1, 2), repeat=3):
        checks.append((f'eta^3 ({a},{b},{c})', lambda a=a, b=b, c=c: hidden(a, b, c)))
    for a in range(-2, 3):
        checks.append((f'unit a={a}', lambda a=a: unit_then_res(a)))
    return checks


def _transfer_checks(w: int) -> List[Check]:
    def check(s, c):
        for b in s_basis(s, 0):
            image = normalize((W0,)) * transfer(c, SElement.of(b))
            if not image.is_zero():
                return f'w[0]*tr_{c}({b.name}) = {image}'
        return None
    return [(f'({s},{c})', lambda s=s, c=c: check(s, c)) for s, c in _window(w)]


def _divisibility_checks(w: int) -> List[Check]:
    def divisible(n):
        x = named('ρη₀', 0, 0).scale(james_period(n))
        return None if divisible_by_rho(x, n + 1) is not None else f'2^gamma({n}) rho eta0 not divisible'

    def order(n):
        reduced_ko0_order(n)    # raises on a wrong order
        return None

    def picard(n):
        picard_class(2 * n + 1)
        return None

    checks = [(f'divisible n={n}', lambda n=n: divisible(n)) for n in range(0, 13)]
    checks += [(f'|KO(P_1^{n})|', lambda n=n: order(n)) for n in range(1, 17)]
    checks += [(f'Picard n={n}', lambda n=n: picard(n)) for n in range(-12, 13)]
    return checks


def _order_checks(w: int) -> List[Check]:
    def check(a, b):
        e = group(4 * a - 1, 4 * b - 1)
        expected = s_group(4 * a - 1, 0).order() * s_group(4 * b - 1, 0).order()
        return _differ(f'|E_({a},{b})|', e.order(), expected)
    r = max(1, w // 2)
    return [(f'E_({a},{b})', lambda a=a, b=b: check(a, b))
            for a in range(-r, r + 1) for b in range(-r, r + 1) if a and b]


def _subring_checks(w: int) -> List[Check]:
    def zero_line(x: GreenElement) -> bool:
        return all(g.family in (Family.W, Family.E) for _, bw in x.terms() for g in bw)

    def relation(a):
        left = normalize((E0, E0, E0, Gen(Family.E, a)))
        right = normalize((W0, W0, W0, Gen(Family.W, a + 1)))
        return _differ(f'eta0^3 eta[{a}] = w0^3 w[{a + 1}]', left, right)

    def closed(s, t):
        xs = [GreenElement.of(bw) for bw in basis_words(s, 0) if zero_line(GreenElement.of(bw))]
        ys = [GreenElement.of(bw) for bw in basis_words(t, 0) if zero_line(GreenElement.of(bw))]
        for x in xs:
            for y in ys:
                p = multiply(x, y)
                if not zero_line(p):
                    return f'{x} * {y} = {p} leaves the subring'
        return None

    checks = [(f'a={a}', lambda a=a: relation(a)) for a in range(-3, 4)]
    checks += [(f'({s},0)*({t},0)', lambda s=s, t=t: closed(s, t))
               for s, t in itertools.combinations_with_replacement(range(-w, w + 1), 2)]
    return checks


_BUILDERS: Dict[str, Callable[[int], List[Check]]] = {
    'e2': _e2_checks,
    'd3': _d3_checks,
    'ko': _ko_checks,
    'hfpss': _hfpss_checks,
    'products': _product_checks,
    'closure': _closure_checks,
    'axioms': _axiom_checks,
    'restriction': _restriction_checks,
    'transfers': _transfer_checks,
    'divisibility': _divisibility_checks,
    'orders': _order_checks,
    'subring': _subring_checks,
}


# ------
# Runner
# ------

def _run(report: Report, suite: str, label: str, fn: Callable[[], Optional[str]]):
    try:
        failure = fn()
    except (EngineException, VerificationFailure) as ex:
        failure = f'{type(ex).__name__}: {ex}'
    except Exception as ex:
        logger.error(f'[verify] {suite} {label}: check crashed', exc_info=Config.verbose_exceptions)
        failure = f'crashed with {type(ex).__name__}: {ex}'
    if failure is None:
        logger.debug(f'[verify] {suite} {label}: ok')
    else:
        logger.warning(f'[verify] {suite} {label}: {failure}')
    report.record(suite, label, failure)


def select_suites(names: Sequence[str]) -> List[str]:
    """Expand 'all' and check the names"""
    out = []
    for name in names:
        if name == 'all':
            out += [s for s in SUITES if s not in out]
        elif name in SUITES:
            if name not in out:
                out.append(name)
        else:
            raise VerificationFailure(message=f'unknown suite {name}; known: all, {", ".join(SUITES)}')
    return out


def run_suites(names: Sequence[str] = ('all',), window: int = None) -> Report:
    """Run the named suites over |s|, |c| <= window

    The table file is loaded before any check is scheduled, so a damaged
    file raises :py:class:`TableFormatException` here instead of showing up
    as failed checks.
    """
    window = Config.window if window is None else window
    suites = select_suites(names)
    load_tables()
    report = Report()
    for suite in suites:
        checks = _BUILDERS[suite](window)
        report.results[suite] = SuiteResult(suite)
        with ThreadPoolExecutor(max_workers=Config.workers) as pool:
            futures = [pool.submit(_run, report, suite, label, fn) for label, fn in checks]
        for future in futures:
            future.result()
        result = report.results[suite]
        logger.info(f'[verify] {suite}: {result.checked} checked, {len(result.failures)} failed')
    return report


def verify_descent(window: int = None) -> Report:
    """verify_hfpss over every bidegree of the window"""
    return run_suites(['hfpss'], window)


def verify_axioms(window: int = None) -> Report:
    """Ring axioms, the restriction ring map, Frobenius reciprocity, Mackey
    exactness and the Weyl involution over the window
    """
    return run_suites(['closure', 'axioms', 'restriction', 'transfers'], window)
