"""Logging utilities using Loguru"""

import sys
from typing import Optional

from loguru import logger

from src.utils.config import settings

# {extra[command]} is the CLI subcommand, bound by run(); "-" outside the CLI
LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[command]} | {name}:{function}:{line} - {message}"
CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <magenta>{extra[command]}</magenta> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def setup_logger(level: Optional[str] = None):
    """
    Configure the logger

    The console sink is stderr so JSON reports on stdout stay parseable.
    Rotating files under logs/ are opt-in through `log_to_file`.
    """
    logger.remove()
    logger.configure(extra={"command": "-"})

    logger.add(sys.stderr, colorize=True, format=CONSOLE_FORMAT, level=level or settings.log_level)

    if not settings.log_to_file:
        return logger

    log_dir = settings.logs_dir
    log_dir.mkdir(exist_ok=True)

    # Full trace of scans and verifications
    logger.add(
        log_dir / "ccsurgery_{time:YYYY-MM-DD}.log",
        rotation="00:00",
        retention="30 days",
        compression="zip",
        format=LOG_FORMAT,
        level="DEBUG",
    )

    # Failed identities and rejected inputs only
    logger.add(
        log_dir / "errors_{time:YYYY-MM-DD}.log",
        rotation="00:00",
        retention="90 days",
        compression="zip",
        format=LOG_FORMAT,
        level="ERROR",
    )

    return logger


app_logger = setup_logger()
