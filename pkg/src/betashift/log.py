"""
Logging setup for betashift.

Library modules log through ``logging.getLogger(__name__)`` and never print;
the CLI installs a rich handler on the package logger.
"""

from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "betashift"


def configure_logging(level: str | int = "WARNING") -> logging.Logger:
    """
    Attach a single RichHandler (stderr) to the betashift logger.

    Calling it again only updates the level.

    Args:
        level: Level name or number

    Returns:
        The package logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logger.setLevel(level)

    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
        logger.propagate = False

    return logger


__all__ = ['configure_logging', 'LOGGER_NAME']
