"""Logging utilities for the sector-plate analyzer toolkit.

Everything goes to stderr (and optionally a file) so that tables and CSV
written to stdout stay byte-identical between runs.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def setup_logger(log_level: str = "INFO", log_file: Optional[str] = None) -> logger:
    """Setup logger with stderr and optional file output."""
    log_level = log_level.upper()
    if log_level not in LOG_LEVELS:
        raise ValueError(f"Unknown log level: {log_level}")

    logger.remove()
    # components bind their own name, e.g. optimizer.refined
    logger.configure(extra={"name": "-"})

    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{extra[name]}</cyan> - <level>{message}</level>",
        level=log_level,
        colorize=True
    )

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_path,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[name]} | {name}:{function}:{line} - {message}",
            level=log_level,
            rotation="10 MB",
            retention="7 days"
        )

    return logger
