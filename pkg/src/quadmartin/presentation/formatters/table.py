"""
Rich tables for command results, model checks and the acceptance suite.
"""

from quadmartin.application.services import CriterionResult
from quadmartin.domain.models import ValidationReport

from .base import TableFormatter
from .export import OutputTable


class OutputTableFormatter(TableFormatter):
    """Formatter for any command result table."""

    def format(self, data: OutputTable, title: str | None = None) -> None:
        """Format and display a result table."""
        table = self.create_table(title, [(name, {"style": "cyan"}) for name in data.header])
        for row in data.rows:
            table.add_row(*(self.display_cell(cell) for cell in row))
        self.console.print(table)


class ValidationReportFormatter(TableFormatter):
    """Formatter for model admissibility reports."""

    def format(self, report: ValidationReport) -> None:
        """Format and display the checks with their status."""
        table = self.create_table(
            "Model checks",
            [("Check", {"style": "dim"}), ("Status", {"width": 6}), ("Detail", {"style": "cyan"})],
        )
        for check in report.checks:
            table.add_row(check.name, self.status_cell(check.passed), check.detail)
        self.console.print(table)


class VerificationFormatter(TableFormatter):
    """Formatter for the acceptance suite."""

    def format(self, results: list[CriterionResult]) -> None:
        """Format and display criteria with measured value, bound and status."""
        table = self.create_table(
            "Acceptance criteria",
            [
                ("#", {"style": "dim", "width": 3}),
                ("Check", {"min_width": 24}),
                ("Measured", {"style": "cyan"}),
                ("Bound", {"style": "cyan"}),
                ("Status", {"width": 6}),
                ("Time", {"style": "dim"}),
                ("Detail", {"style": "dim"}),
            ],
        )
        for result in results:
            table.add_row(
                str(result.number),
                result.name,
                f"{result.measured:.3e}",
                f"{result.bound:.3e}",
                self.status_cell(result.passed, "FAIL"),
                f"{result.seconds:.1f}s",
                result.detail,
            )

        passed = sum(result.passed for result in results)
        self.console.print(table)
        self.console.print(f"\n[bold]{passed}/{len(results)}[/bold] checks passed")
