# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# config.py - Engine configuration
# Part of the greensphere exact engine
#
# Python Compatibility: Requires Python 3.9 or later
#
# -----------------------------------------------------------------------------
# MIT License
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
# -----------------------------------------------------------------------------
# Edit History:
# 02-Sep-2026   gsd 0.1 Engine, tables, verify and output sections
# 14-Sep-2026   gsd 0.2 GREENSPHERE_CONFIG override file, CLI overrides
# 03-Oct-2026   gsd 0.3 GREENSPHERE_TABLES environment override
#
import os
import toml
import logging

_dict = {}

_config_logger = logging.getLogger("config")

def get_config_path():
    candidate = os.path.join(os.path.dirname(__file__), 'config.toml')
    _config_logger.info(f"[config] Checking for config.toml in package dir: {candidate}")
    if os.path.exists(candidate):
        _config_logger.info(f"[config] Using config.toml: {candidate}")
        return candidate
    # Try one directory up (project root)
    candidate = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'config.toml')
    _config_logger.info(f"[config] Checking for config.toml in parent dir: {candidate}")
    if os.path.exists(candidate):
        _config_logger.info(f"[config] Using config.toml: {candidate}")
        return candidate
    _config_logger.error("[config] config.toml not found in any expected location!")
    raise FileNotFoundError("config.toml not found")

config_path = get_config_path()
_dict = toml.load(config_path)    # Errors here are fatal.
_dict2 = {}
try:
    # An installation specific file named by GREENSPHERE_CONFIG can override
    # or supplement items of the packaged config.toml
    _dict2 = toml.load(os.environ['GREENSPHERE_CONFIG'])
except (KeyError, OSError, toml.TomlDecodeError):
    _dict2 = {}

def get_toml(sect: str, item: str):
    setting = ''
    try:
        setting = _dict2[sect][item]
    except KeyError:
        try:
            setting = _dict[sect][item]
        except KeyError:
            setting = ''
    return setting

def tables_path() -> str:
    """Table data file: GREENSPHERE_TABLES, then [tables] path, then the packaged file"""
    env = os.environ.get('GREENSPHERE_TABLES', '')
    if env:
        return env
    if Config.tables_path:
        return Config.tables_path
    return os.path.join(os.path.dirname(__file__), 'data', 'green_tables.toml')

class Config:
    """Engine configuration. If the environment variable ``GREENSPHERE_CONFIG``
        names a readable toml file, any setting there overrides the one in the
        packaged ``config.toml``. Command line flags override both for one run
        through :py:meth:`apply_overrides`.
    """
    # --------------
    # Engine Section
    # --------------
    precision: int = get_toml('engine', 'precision')
    k: int = get_toml('engine', 'k')
    window: int = get_toml('engine', 'window')
    slack: int = get_toml('engine', 'slack')
    # --------------
    # Tables Section
    # --------------
    tables_path: str = get_toml('tables', 'path')
    # --------------
    # Verify Section
    # --------------
    workers: int = get_toml('verify', 'workers')
    max_report: int = get_toml('verify', 'max_report')
    product_range: int = get_toml('verify', 'product_range')
    closure_range: int = get_toml('verify', 'closure_range')
    # --------------
    # Output Section
    # --------------
    format: str = get_toml('output', 'format')
    chart_cell: int = get_toml('output', 'chart_cell')
    # ---------------
    # Logging Section
    # ---------------
    log_level: int = logging.getLevelName(get_toml('logging', 'log_level'))  # Not documented but works
    log_to_stdout: bool = get_toml('logging', 'log_to_stdout')
    max_size_mb: int = get_toml('logging', 'max_size_mb')
    num_keep_logs: int = get_toml('logging', 'num_keep_logs')
    verbose_exceptions: bool = get_toml('logging', 'verbose_exceptions')

    @classmethod
    def apply_overrides(cls, precision: int = None, k: int = None,
                        window: int = None, format: str = None):
        """Replace engine settings for this run. ``None`` leaves a setting alone."""
        if precision is not None:
            cls.precision = precision
        if k is not None:
            cls.k = k
        if window is not None:
            cls.window = window
        if format is not None:
            cls.format = format
