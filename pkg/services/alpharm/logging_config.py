"""
Alpharm Logging Setup
Single stderr sink for loguru, text or serialized JSON records
"""

import os
import sys
from typing import Optional

from loguru import logger

TEXT_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {name} - {level} - {message}"


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """
    Install the alpharm log sink, replacing any existing handlers

    Args:
        level: Log level name; falls back to LOG_LEVEL, then WARNING
        fmt: "json" or "text"; falls back to LOG_FORMAT, then text
    """
    log_level = (level or os.getenv("LOG_LEVEL", "WARNING")).upper()
    log_format = (fmt or os.getenv("LOG_FORMAT", "text")).lower()

    logger.remove()
    if log_format == "json":
        logger.add(sys.stderr, level=log_level, serialize=True)
    else:
        logger.add(sys.stderr, level=log_level, format=TEXT_FORMAT)
    logger.debug(f"Logging configured: level={log_level} format={log_format}")
