"""Logging configuration with loguru."""

import logging
import sys
from functools import lru_cache

from loguru import logger

from hilbertlab.config import Settings


class InterceptHandler(logging.Handler):
    """Handler that intercepts standard logging and redirects to loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        """Emit a log record to loguru."""
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Walk back to the frame that issued the call
        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


@lru_cache
def setup_logging() -> None:
    """Configure loguru based on environment.

    Logs go to stderr: stdout carries the JSON and CSV reports.
    """
    settings = Settings()

    logger.remove()

    if settings.environment == "production":
        logger.add(
            sys.stderr,
            format="{message}",
            level=settings.log_level,
            serialize=True,
        )
    else:
        logger.add(
            sys.stderr,
            format=(
                "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
                "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level> "
                "<dim>{extra}</dim>"
            ),
            level=settings.log_level,
            colorize=True,
        )

    # uvicorn, fastapi and py.warnings all go through the root logger
    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    logging.captureWarnings(True)

    logger.debug("Logging configured", environment=settings.environment, level=settings.log_level)
