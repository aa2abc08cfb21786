# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# exceptions.py - Engine Exception Classes
#
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 02-Sep-2026   gsd 0.1 Numbered engine exceptions, all log on construction
# 19-Sep-2026   gsd 0.2 UnspecifiedProductException for untabled products
# 06-Oct-2026   gsd 0.3 VerificationFailure carries the failing item
#
import logging
import traceback
from .config import Config
from logging import Logger

global logger
logger: Logger = logging.getLogger("greensphere")    # Replaced by app.main()

class Success:
    """Default err input to result classes, indicates success"""

    def __init__(self):
        """Initialize the Success object

        Args:
            number (int):   0
            message (str):  ''
        """
        self.number: int = 0
        self.message: str = ''


    @property
    def Number(self) -> int:
        return self.number

    @property
    def Message(self) -> str:
        return self.message


class EngineException(Exception):
    """Base of all numbered engine exceptions. Logs itself when raised."""
    number: int = 0x400
    default_message: str = 'Engine error.'

    def __init__(self, message: str = None):
        if message is None:
            message = self.default_message
        super().__init__(message)
        self.message = message
        cname = self.__class__.__name__
        logger.error(f'{cname}: {message}')

    @property
    def Number(self) -> int:
        return self.number

    @property
    def Message(self) -> str:
        return self.message


class InvalidValueException(EngineException):
    """An argument is outside the domain of the operation (even k, val2(0),
    negative n, twist not in {0, 1/2}).
    """
    number = 0x401
    default_message = 'Invalid value given.'


class ExpressionParseException(EngineException):
    """An element expression does not follow the generator grammar"""
    number = 0x402
    default_message = 'The expression could not be parsed.'


class TableFormatException(EngineException):
    """The table data file is malformed or has an unsupported version"""
    number = 0x403
    default_message = 'The table data file is malformed.'


class PrecisionExhaustedException(EngineException):
    """A valuation or invariant factor cannot be certified at the working
    precision. Raise ``--precision`` and retry.
    """
    number = 0x404
    default_message = 'Working precision exhausted.'


class UnspecifiedProductException(EngineException):
    """The product or transfer asked for is not determined by the recorded
    relations. Never answered with 0.
    """
    number = 0x405
    default_message = 'The product is not determined by the recorded relations.'


class VerificationFailure(Exception):
    """
    **Exception Class for Consistency Failures**
        Raised when two independent computations of the same object disagree
        (closed form against computed pipeline, lookup against recomputation).
        Can be built with a captured exception, and if so the message includes
        its type or optionally a complete traceback (a config option).
    """
    def __init__(
            self,
            number: int = 0x500,
            message: str = 'Independent computations disagree.',
            exc = None  # Python exception info
        ):
        if number < 0x500 or number > 0xFFF:
            logger.error(f'Programmer error, bad VerificationFailure number {hex(number)}, substituting 0x500')
            number = 0x500
        self.number = number
        cname = self.__class__.__name__
        super().__init__(message)
        if exc is not None:
            if Config.verbose_exceptions:
                self.fullmsg = f'{cname}: {message}\n{traceback.format_exc()}'
            else:
                self.fullmsg = f'{cname}: {message}\n{type(exc).__name__}: {str(exc)}'
        else:
            self.fullmsg = f'{cname}: {message}'
        logger.error(self.fullmsg)

    @property
    def Number(self) -> int:
        return self.number

    @property
    def Message(self) -> str:
        return self.fullmsg


class UnreachableProductError(VerificationFailure):
    """The normalizer stopped at a word that is not an additive basis name"""
    def __init__(self, message: str = 'Word reached no basis name.'):
        super().__init__(0x501, message)
