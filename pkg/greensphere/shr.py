# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# shr.py - Query result records and shared support functions
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 02-Sep-2026   gsd 0.1 QueryResult with thread-safe QueryID
# 16-Sep-2026   gsd 0.2 Aligned text rendering, from_json round trip
# 07-Oct-2026   gsd 0.3 Error fields filled from engine exceptions
#
from threading import Lock
from .exceptions import Success
import json
from logging import Logger
from typing import List, Tuple

logger: Logger = None

def set_shr_logger(lgr):
    global logger
    logger = lgr

# ----------------
# Engine Info
# ----------------
# Static metadata not subject to configuration changes
class EngineMetadata:
    """ Metadata describing the engine """
    Version = '1.0.0'
    Description = 'Exact arithmetic for the C2-equivariant K(1)-local sphere'

# ------------
# QueryResult
# ------------
_FIELDS = ('QueryID', 'Command', 'Bidegree', 'Group', 'Basis', 'Value', 'ErrorNumber', 'ErrorMessage')

class QueryResult():
    """Record returned by every query command

    Serialized as one JSON object with the keys of ``_FIELDS``. ``Bidegree`` is
    ``[s, c]`` (``[n]`` for a classical stem, ``null`` when not applicable),
    ``Group`` the invariant-factor text, ``Basis`` the named basis and
    ``Value`` the element text. On an error, ``Value`` is ``null`` and the
    error fields carry the engine exception number and message.
    """
    def __init__(self, command: str, bidegree: Tuple[int, ...] = None, group: str = None,
                 basis: List[str] = None, value: str = None, err = Success()):
        """Initialize a ``QueryResult`` object.

        Args:
            command: The command line verb that produced the result.
            bidegree: (s, c) or (n,) or None.
            group: Invariant-factor text of the group queried or landed in.
            basis: Names of the basis of that group.
            value: The computed element as text, or None on an error.
            err: An engine exception, defaults to :py:class:`~exceptions.Success`

        Notes:
            * Bumps the QueryID value and returns it in sequence
        """
        self.QueryID = getNextQueryId()
        self.Command = command
        self.Bidegree = list(bidegree) if bidegree is not None else None
        self.Group = group
        self.Basis = list(basis) if basis is not None else []
        self.Value = value if err.Number == 0 else None
        if err.Number == 0 and logger is not None:
            logger.info(f'[{command}] <- {value if value is not None else group}')
        self.ErrorNumber = err.Number
        self.ErrorMessage = err.Message

    @property
    def ok(self) -> bool:
        return self.ErrorNumber == 0

    @property
    def json(self) -> str:
        """Return the JSON for the QueryResult"""
        return json.dumps(self, default=lambda o: o.__dict__, ensure_ascii=False)

    @property
    def text(self) -> str:
        """Aligned ``Key: value`` lines, empty fields left out"""
        width = max(len(k) for k in _FIELDS)
        lines = []
        for k in _FIELDS:
            v = getattr(self, k)
            if v is None or v == [] or (k.startswith('Error') and not self.ErrorNumber):
                continue
            if k == 'Bidegree':
                v = '(' + ','.join(str(x) for x in v) + ')'
            elif k == 'Basis':
                v = ', '.join(v)
            elif k == 'ErrorNumber':
                v = hex(v)
            lines.append(f'{k:<{width}}  {v}')
        return '\n'.join(lines)

    @staticmethod
    def from_json(text: str) -> 'QueryResult':
        """Rebuild a QueryResult, keeping its QueryID"""
        d = json.loads(text)
        r = QueryResult.__new__(QueryResult)
        for k in _FIELDS:
            setattr(r, k, d.get(k))
        return r

    def __eq__(self, other) -> bool:
        return isinstance(other, QueryResult) and self.__dict__ == other.__dict__

    def __repr__(self):
        return f'QueryResult({self.json})'


def render(result: QueryResult, format: str) -> str:
    return result.json if format == 'json' else result.text


# -------------------------------
# Thread-safe QueryID
# -------------------------------
_lock = Lock()
_qid = 0

def getNextQueryId() -> int:
    with _lock:
        global _qid
        _qid += 1
        return _qid
