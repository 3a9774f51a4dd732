"""Tests for the rich table formatters."""

import io

import pytest
from rich.console import Console

from quadmartin.application.services import CriterionResult
from quadmartin.domain.models import ValidationCheck, ValidationReport
from quadmartin.presentation.formatters import (
    OutputTable,
    OutputTableFormatter,
    TableFormatter,
    ValidationReportFormatter,
    VerificationFormatter,
)

pytestmark = pytest.mark.unit


@pytest.fixture
def buffer() -> io.StringIO:
    return io.StringIO()


@pytest.fixture
def console(buffer: io.StringIO) -> Console:
    return Console(file=buffer, width=200, color_system=None)


def test_display_cell_shortens_floats() -> None:
    assert TableFormatter.display_cell(1.0 / 3.0) == "0.3333333333"
    assert TableFormatter.display_cell(True) == "true"
    assert TableFormatter.display_cell(7) == "7"


def test_output_table(console: Console, buffer: io.StringIO) -> None:
    table = OutputTable(["alpha", "k"], rows=[[0.5, 2.0 / 3.0]])
    OutputTableFormatter(console).format(table, title="Martin kernel limits")
    text = buffer.getvalue()
    assert "Martin kernel limits" in text
    assert "0.6666666667" in text


def test_validation_report(console: Console, buffer: io.StringIO) -> None:
    report = ValidationReport(
        checks=(ValidationCheck("drift_positive", True), ValidationCheck("existence", False, "|r1*r2|=2"))
    )
    ValidationReportFormatter(console).format(report)
    text = buffer.getvalue()
    assert "drift_positive" in text
    assert "pass" in text
    assert "fail" in text


def test_verification_summary(console: Console, buffer: io.StringIO) -> None:
    results = [
        CriterionResult(1, "algebraic identities (P1)", 1e-14, 1e-10, True),
        CriterionResult(6, "harmonicity", 0.2, 0.01, False, detail="ratio=1.2"),
    ]
    VerificationFormatter(console).format(results)
    text = buffer.getvalue()
    assert "FAIL" in text
    assert "1/2 checks passed" in text
