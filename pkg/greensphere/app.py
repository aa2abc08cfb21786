# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# app.py - Application module, the command line surface
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 02-Sep-2026   gsd 0.1 Initial edit, group and mul commands
# 17-Sep-2026   gsd 0.2 res, tr and unit commands. Last chance exception handler.
# 09-Oct-2026   gsd 0.3 chart and verify commands, --out
# 14-Oct-2026   gsd 0.4 Exit codes by exception class, shift and detect commands
# 18-Oct-2026   gsd 0.5 verify writes its own verify.log
#
import argparse
import json
import sys
import traceback
from fractions import Fraction
from typing import List

from . import charts
from . import classical_sphere
from . import exceptions
from . import green_sphere
from . import ko_ring
from . import log
from . import modlin
from . import tables
from . import verify
from .classical_sphere import s_group
from .config import Config
from .exceptions import (EngineException, ExpressionParseException, TableFormatException,
                         VerificationFailure)
from .green_sphere import (detected_by, group, parse_classical, parse_green, restriction,
                           tau4_shift, transfer, unit)
from .ko_ring import ko_group
from .ku_ring import ku_group
from .shr import EngineMetadata, QueryResult, render, set_shr_logger
from .twoadic import check_generator

# ----------
# Exit codes
# ----------
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_ENGINE = 3


def custom_excepthook(exc_type, exc_value, exc_traceback):
    """Last-chance exception handler

    Caution:
        Hook this as last-chance only after the config info
        has been initialized and the logger is set up!

    Assures that any unhandled exceptions are logged to our logfile.
    A config option provides for a full traceback to be logged.

    Notes:
        * See the Python docs for `sys.excepthook() <https://docs.python.org/3/library/sys.html#sys.excepthook>`_

    """
    # Do not print exception when user cancels the program
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    log.logger.error(f'An uncaught {exc_type.__name__} exception occurred:')
    log.logger.error(exc_value)

    if Config.verbose_exceptions and exc_traceback:
        format_exception = traceback.format_tb(exc_traceback)
        for line in format_exception:
            log.logger.error(repr(line))


def exit_code(ex: BaseException) -> int:
    if isinstance(ex, VerificationFailure):
        return EXIT_MISMATCH
    if isinstance(ex, (ExpressionParseException, TableFormatException)):
        return EXIT_PARSE
    return EXIT_ENGINE


# ----------------
# Query commands
# ----------------

def cmd_group(args) -> QueryResult:
    s, c = args.s, args.c
    if args.ring == 'ku':
        m = ku_group(s, c)
    elif args.ring == 'ko':
        m = ko_group(s, c)
    elif args.ring == 'sphere':
        m = group(s, c)
    else:
        m = s_group(s, Fraction(args.eps))
        return QueryResult('group', (s,), str(m), m.basis_names)
    return QueryResult('group', (s, c), str(m), m.basis_names)


def _green_result(command: str, x, value: str) -> QueryResult:
    m = group(*x.bidegree)
    return QueryResult(command, x.bidegree, str(m), m.basis_names, value)


def cmd_mul(args) -> QueryResult:
    x = parse_green(args.expr)
    return _green_result('mul', x, str(x))


def cmd_res(args) -> QueryResult:
    x = restriction(parse_green(args.expr))
    m = s_group(x.stem, x.twist)
    return QueryResult('res', (x.stem,), str(m), m.basis_names, x.ascii)


def cmd_tr(args) -> QueryResult:
    x = transfer(args.c, parse_classical(args.expr))
    return _green_result('tr', x, str(x))


def cmd_unit(args) -> QueryResult:
    x = unit(parse_classical(args.expr))
    return _green_result('unit', x, str(x))


def cmd_shift(args) -> QueryResult:
    x = tau4_shift(parse_green(args.expr))
    return _green_result('shift', x, str(x))


def cmd_detect(args) -> QueryResult:
    x = parse_green(args.name)
    return _green_result('detect', x, detected_by(args.name))


QUERIES = {
    'group': cmd_group,
    'mul': cmd_mul,
    'res': cmd_res,
    'tr': cmd_tr,
    'unit': cmd_unit,
    'shift': cmd_shift,
    'detect': cmd_detect,
}


# ----------------------
# Chart and verification
# ----------------------

def _emit(text: str, out: str):
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
        log.logger.info(f'[app] wrote {out}')
    else:
        print(text)


def cmd_chart(args) -> int:
    window = Config.window
    s_range = tuple(args.srange) if args.srange else (-window, window)
    c_range = tuple(args.crange) if args.crange else (-window, window)
    fmt = Config.format if Config.format in charts.FORMATS else 'text'
    spec = charts.ChartSpec(args.ring, s_range, c_range, fmt)
    _emit(charts.render(spec), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    handler = log.add_verify_log(args.log_dir)
    try:
        report = verify.run_suites(args.suites, Config.window)
    finally:
        log.remove_verify_log(handler)
    if Config.format == 'json':
        text = json.dumps({'ok': report.ok, 'suites': report.to_dict()}, ensure_ascii=False, indent=2)
    else:
        text = '\n'.join(report.lines() + ['OK' if report.ok else 'MISMATCH'])
    _emit(text, args.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


# ------
# Parser
# ------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='greensphere', description=EngineMetadata.Description)
    ap.add_argument('--precision', type=int, help='2-adic working precision N (default from config.toml)')
    ap.add_argument('--k', type=int, help='Adams operation index, +-3 mod 8')
    ap.add_argument('--window', type=int, help='bidegree window |s|, |c| <= W for chart and verify')
    ap.add_argument('--format', choices=('text', 'json', 'svg'), help='output format')
    ap.add_argument('--out', help='write output to this path instead of stdout')
    ap.add_argument('--log-dir', help='directory for greensphere.log and verify.log')
    sub = ap.add_subparsers(dest='command', required=True)

    p = sub.add_parser('group', help='a homotopy group with its named basis')
    p.add_argument('s', type=int)
    p.add_argument('c', type=int)
    p.add_argument('--ring', choices=('ku', 'ko', 'sphere', 'classical'), default='sphere')
    p.add_argument('--eps', default='0', help="twist of the classical group, 0 or 1/2")

    p = sub.add_parser('mul', help='normalize a product of generators')
    p.add_argument('expr')
    p = sub.add_parser('res', help='restriction to the classical sphere')
    p.add_argument('expr')
    p = sub.add_parser('tr', help='transfer of a classical class into coweight c')
    p.add_argument('c', type=int)
    p.add_argument('expr')
    p = sub.add_parser('unit', help='unit map image in degree (n, n)')
    p.add_argument('expr')
    p = sub.add_parser('shift', help='tau^4 shift of a rho^3-torsion element')
    p.add_argument('expr')
    p = sub.add_parser('detect', help='KO class detecting a basis name')
    p.add_argument('name')

    p = sub.add_parser('chart', help='chart of a ring over a window')
    p.add_argument('--ring', choices=charts.RINGS, default='sphere')
    p.add_argument('--srange', type=int, nargs=2, metavar=('LO', 'HI'))
    p.add_argument('--crange', type=int, nargs=2, metavar=('LO', 'HI'))
    p.add_argument('--window', type=int, default=argparse.SUPPRESS, help='square window, same as the global flag')

    p = sub.add_parser('verify', help='run consistency suites over the window')
    p.add_argument('--suites', nargs='+', default=['all'], help=f'all or any of: {", ".join(verify.SUITES)}')
    p.add_argument('--window', type=int, default=argparse.SUPPRESS, help='bidegree window, same as the global flag')
    return ap


def share_logger(logger):
    """Share this logger throughout"""
    log.logger = logger
    exceptions.logger = logger
    set_shr_logger(logger)
    for module in (charts, classical_sphere, green_sphere, ko_ring, modlin, tables, verify):
        module.logger = logger


# ===========
# APP STARTUP
# ===========
def run(argv: List[str] = None) -> int:
    """Parse the command line, run one command, return the exit code"""
    args = build_parser().parse_args(argv)
    share_logger(log.init_logging(args.log_dir))
    sys.excepthook = custom_excepthook

    try:
        Config.apply_overrides(args.precision, args.k, args.window, args.format)
        check_generator(Config.k)
        log.logger.info(f'==STARTUP== {args.command}, precision {Config.precision}, k {Config.k}')
        if args.command == 'chart':
            return cmd_chart(args)
        if args.command == 'verify':
            return cmd_verify(args)
        result = QUERIES[args.command](args)
        code = EXIT_OK
    except (EngineException, VerificationFailure) as ex:
        if args.command in QUERIES:
            result = QueryResult(args.command, err=ex)
        else:
            print(f'{type(ex).__name__}: {ex}', file=sys.stderr)
            return exit_code(ex)
        code = exit_code(ex)
    except OSError as ex:
        log.logger.error(f'[app] cannot write output: {ex}')
        print(f'{type(ex).__name__}: {ex}', file=sys.stderr)
        return EXIT_ENGINE

    fmt = 'json' if Config.format == 'json' else 'text'
    try:
        _emit(render(result, fmt), args.out)
    except OSError as ex:
        log.logger.error(f'[app] cannot write output: {ex}')
        return EXIT_ENGINE
    return code


def main():
    sys.exit(run())

# ========================
if __name__ == '__main__':
    main()
# ========================
