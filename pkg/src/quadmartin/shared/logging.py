"""Logging setup for the quadmartin package."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from quadmartin.shared.config import LoggingConfig

PACKAGE_LOGGER = "quadmartin"


def configure_logging(
    config: LoggingConfig, debug: bool = False, verbose: bool = False
) -> logging.Logger:
    """Attach a rich stderr handler (and an optional file handler) to the package logger.

    Repeated calls replace the handlers installed by a previous call.
    """
    level = "DEBUG" if debug else "INFO" if verbose else config.level
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(level)

    for handler in list(logger.handlers):
        if getattr(handler, "_quadmartin", False):
            logger.removeHandler(handler)
            handler.close()

    rich_handler = RichHandler(
        console=Console(stderr=True),
        show_path=debug,
        rich_tracebacks=debug,
    )
    rich_handler.setFormatter(logging.Formatter(config.format))
    rich_handler._quadmartin = True  # type: ignore[attr-defined]
    logger.addHandler(rich_handler)

    if config.file_path is not None:
        file_handler = logging.FileHandler(config.file_path)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        file_handler._quadmartin = True  # type: ignore[attr-defined]
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
