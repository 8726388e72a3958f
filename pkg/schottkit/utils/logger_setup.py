#!/usr/bin/env python

"""
Logging for schottkit. Quiet (WARNING) by default; turn on progress
messages from the rank computations and gauge checks with:

schottkit.set_loglevel("DEBUG")
schottkit.set_loglevel("INFO", logfile="run.log")

Color follows the terminal unless NO_COLOR is set or color= is given.
"""

from typing import Optional
import os
import sys
from loguru import logger

from schottkit.utils.utils import ParseError


LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

LOGFORMAT = (
    "{time:hh:mm} <level>{level: <7}</level> <white>|</white> "
    "<cyan>{name: <28}</cyan> <white>|</white> "
    "<level>{message}</level>"
)


def set_loglevel(loglevel: str = "DEBUG", logfile: Optional[str] = None, color: Optional[bool] = None):
    """
    Route schottkit messages at or above loglevel to stderr, and
    optionally also to logfile (uncolored). color=None colors stderr
    inside IPython or on a tty, never when NO_COLOR is set.
    """
    level = str(loglevel).upper()
    if level not in LEVELS:
        raise ParseError(f"unknown log level {loglevel!r}; use one of {', '.join(LEVELS)}")
    if color is None:
        try:
            import IPython
            color = bool(IPython.get_ipython())
        except ImportError:
            color = False
        color = (color or sys.stderr.isatty()) and "NO_COLOR" not in os.environ
    handlers = [
        {"sink": sys.stderr, "format": LOGFORMAT, "level": level, "colorize": color},
    ]
    if logfile:
        handlers.append(
            {"sink": logfile, "format": LOGFORMAT, "level": level, "colorize": False}
        )
    logger.configure(handlers=handlers)
    logger.enable("schottkit")
    return color
