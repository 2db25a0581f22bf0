"""Logging setup helpers."""

from __future__ import annotations

import logging

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
PACKAGE_LOGGER = "porebench"


def _level(name: str) -> int:
    value = logging.getLevelName(name.upper())
    return value if isinstance(value, int) else logging.INFO


def setup_logging(level: str = "INFO") -> logging.Logger:
    """Configure logging once and return the package logger.

    The root logger is left alone when an embedding application (or pytest)
    already installed handlers; the package logger always follows ``level``.
    """
    numeric = _level(level)
    if not logging.getLogger().handlers:
        logging.basicConfig(level=numeric, format=LOG_FORMAT)
    package = logging.getLogger(PACKAGE_LOGGER)
    package.setLevel(numeric)
    return package
