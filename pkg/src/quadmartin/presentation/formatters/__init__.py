"""Output formatters for the command-line interface."""

from .base import BaseFormatter, TableFormatter
from .export import OutputTable, format_cell, parse_cell
from .table import OutputTableFormatter, ValidationReportFormatter, VerificationFormatter

__all__ = [
    "BaseFormatter",
    "OutputTable",
    "OutputTableFormatter",
    "TableFormatter",
    "ValidationReportFormatter",
    "VerificationFormatter",
    "format_cell",
    "parse_cell",
]
