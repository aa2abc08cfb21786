# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# log.py - Shared global logging object
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License (see config.py)
# -----------------------------------------------------------------------------
# Edit History:
# 02-Sep-2026   gsd 0.1 Initial edit, log name is 'greensphere'
# 21-Sep-2026   gsd 0.2 Log directory may be redirected for tests
# 18-Oct-2026   gsd 0.3 Separate verify.log with suite summaries and failing checks
#

import logging
import logging.handlers
import time
import os
from .config import Config

global logger
logger = None                   # Master copy, set by init_logging()

VERIFY_TAG = '[verify]'


def _formatter() -> logging.Formatter:
    formatter = logging.Formatter('%(asctime)s.%(msecs)03d %(levelname)s %(message)s', '%Y-%m-%dT%H:%M:%S')
    formatter.converter = time.gmtime           # UTC time
    return formatter


def log_dir_path(log_dir: str = None) -> str:
    """``log_dir`` or ``logs/`` beside the package, created if needed"""
    if log_dir is None:
        log_dir = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'logs')
    os.makedirs(log_dir, exist_ok=True)
    return log_dir


def _rotating(path: str) -> logging.handlers.RotatingFileHandler:
    handler = logging.handlers.RotatingFileHandler(path,
                                                    mode='w',
                                                    delay=True,     # Prevent creation of empty logs
                                                    maxBytes=Config.max_size_mb * 1000000,
                                                    backupCount=Config.num_keep_logs)
    handler.setFormatter(_formatter())
    handler.doRollover()                                            # Always start with fresh log
    return handler


def init_logging(log_dir: str = None):
    """ Create the logger - called at app startup

        **MASTER LOGGER**

        This single logger is used throughout. Logs time stamps in UTC/ISO
        format, with fractional seconds. Since the config allows suppression
        of logging to stdout, the default stdout handler is removed in that
        case. A new log is started each time the app is started; verification
        runs can be long, so the file is rotated at ``max_size_mb``.

    Args:
        log_dir: Directory for ``greensphere.log``. Defaults to ``logs/``
            beside the package.

    Returns:
        Customized Python logger.

    """

    logging.basicConfig(level=Config.log_level)
    logger = logging.getLogger()                # Root logger
    logger.handlers[0].setFormatter(_formatter())   # This is the stdout handler, level set above
    handler = _rotating(os.path.join(log_dir_path(log_dir), 'greensphere.log'))
    handler.setLevel(Config.log_level)
    logger.addHandler(handler)
    if not Config.log_to_stdout:
        # The stdout handler is always handlers[0] as created by basicConfig()
        logger.debug('Logging to stdout disabled in settings')
        logger.removeHandler(logger.handlers[0])
    return logger


class VerifyFilter(logging.Filter):
    """Passes only records from the verification runner"""

    def filter(self, record: logging.LogRecord) -> bool:
        return isinstance(record.msg, str) and record.msg.startswith(VERIFY_TAG)


def add_verify_log(log_dir: str = None) -> logging.Handler:
    """Attach ``verify.log`` to the root logger for one verification run

    The file gets the per-suite summaries and one WARNING line for each
    failing check, whatever ``log_level`` says for the main log. Passing
    checks stay in ``greensphere.log`` at DEBUG. Detach the handler with
    :py:func:`remove_verify_log` when the run is over.
    """
    root = logging.getLogger()
    handler = _rotating(os.path.join(log_dir_path(log_dir), 'verify.log'))
    handler.setLevel(logging.INFO)
    handler.addFilter(VerifyFilter())
    root.addHandler(handler)
    handler.root_level = root.level
    if root.getEffectiveLevel() > logging.INFO:
        root.setLevel(logging.INFO)
    return handler


def remove_verify_log(handler: logging.Handler):
    root = logging.getLogger()
    root.removeHandler(handler)
    root.setLevel(getattr(handler, 'root_level', root.level))
    handler.close()
