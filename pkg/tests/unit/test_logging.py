"""Tests for the package logging setup."""

import logging
from pathlib import Path

import pytest
from rich.logging import RichHandler

from quadmartin.shared.config import LoggingConfig
from quadmartin.shared.logging import PACKAGE_LOGGER, configure_logging

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clean_logger():
    yield
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def test_level_from_config() -> None:
    logger = configure_logging(LoggingConfig(level="error"))
    assert logger.level == logging.ERROR
    assert not logger.propagate


@pytest.mark.parametrize(("debug", "verbose", "level"), [(True, False, "DEBUG"), (False, True, "INFO")])
def test_flags_override_config(debug: bool, verbose: bool, level: str) -> None:
    logger = configure_logging(LoggingConfig(), debug=debug, verbose=verbose)
    assert logging.getLevelName(logger.level) == level


def test_repeated_calls_replace_handlers() -> None:
    configure_logging(LoggingConfig())
    logger = configure_logging(LoggingConfig())
    assert sum(isinstance(handler, RichHandler) for handler in logger.handlers) == 1


def test_file_handler(tmp_path: Path) -> None:
    path = tmp_path / "run.log"
    logger = configure_logging(LoggingConfig(level="INFO", file_path=path))
    logging.getLogger(f"{PACKAGE_LOGGER}.domain.kernel").info("Initialized Kernel")
    for handler in logger.handlers:
        handler.flush()
    assert "Initialized Kernel" in path.read_text()
