import sys
import logging
from contextlib import contextmanager
from typing import Optional
from datetime import datetime, timezone
from .config import settings

logger = logging.getLogger("sldcorr")
logger.propagate = False

_FORMATTER = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s', datefmt='%Y-%m-%d %H:%M:%S')


def setup_logging(level: Optional[str] = None) -> None:
    """
    Sets the package verbosity from SLD_CORREL_LOG (or an explicit level).
    Called once by the CLI entry point. No handler is attached here;
    command_logging installs one for each command.
    """
    logger.setLevel((level or settings.LOG).upper())


@contextmanager
def command_logging(command: str, operation: str = "run"):
    """
    Attaches a stderr handler to the package logger for the duration of a
    command and guarantees it is detached afterwards. Output files and stdout
    never receive log records.
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_FORMATTER)
    logger.addHandler(handler)

    started = datetime.now(timezone.utc)
    try:
        logger.info("=" * 50)
        logger.info(f"STARTING {operation.upper()} FOR '{command}'")
        logger.info("=" * 50)

        yield started

    finally:
        logger.info("=" * 50)
        logger.info(f"END OF {operation.upper()} ({datetime.now(timezone.utc) - started})")
        logger.info("=" * 50)

        logger.removeHandler(handler)
        handler.close()
