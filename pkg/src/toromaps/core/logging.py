"""Loguru sinks: stderr for the CLI (stdout carries TSV) and an optional rotated file."""

import sys

from loguru import logger

from toromaps.config import settings

STDERR_FORMAT = "<level>{level: <8}</level> | <cyan>{name}:{function}:{line}</cyan> - {message}"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logging(level: str | None = None):
    level = level or settings.LOG_LEVEL
    logger.remove()
    logger.add(sys.stderr, level=level, format=STDERR_FORMAT)
    if settings.LOG_FILE_PATH:
        try:
            logger.add(settings.LOG_FILE_PATH, rotation="10 MB", retention="30 days", level=level, format=FILE_FORMAT)
        except OSError as exc:
            logger.warning(f"file logging disabled, cannot open {settings.LOG_FILE_PATH}: {exc}")
    return logger


setup_logging()
