"""
Base formatter classes for terminal output.

The ``table`` output format renders through these; CSV and JSON go through
:mod:`quadmartin.presentation.formatters.export` instead.
"""

from abc import ABC, abstractmethod
from typing import Any

from rich.console import Console
from rich.table import Table

from .export import format_cell

# digits shown on screen; exported files keep 17
DISPLAY_DIGITS = 10


class BaseFormatter(ABC):
    """Base class for all formatters."""

    def __init__(self, console: Console | None = None) -> None:
        """Initialize formatter with optional console."""
        self.console = console or Console(width=None)

    @abstractmethod
    def format(self, data: Any) -> None:
        """Format and display data."""


class TableFormatter(BaseFormatter):
    """Rich tables with shortened numbers and coloured pass/fail cells."""

    def create_table(
        self, title: str | None = None, columns: list[tuple[str, dict[str, Any]]] | None = None
    ) -> Table:
        """Table with standard styling and the given ``(name, column options)`` pairs."""
        table = Table(title=title, show_header=True, header_style="bold magenta")
        for name, options in columns or []:
            table.add_column(name, **options)
        return table

    @staticmethod
    def display_cell(value: Any) -> str:
        """Cell text for display (fewer digits than the CSV export)."""
        if isinstance(value, float):
            return f"{value:.{DISPLAY_DIGITS}g}"
        return format_cell(value)

    @staticmethod
    def status_cell(passed: bool, failed_text: str = "fail") -> str:
        return "[green]pass[/green]" if passed else f"[red]{failed_text}[/red]"
