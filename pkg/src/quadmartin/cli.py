"""
Command-line interface for quadmartin.

Re-exports the click application assembled in the presentation layer.
"""

from quadmartin.presentation.cli.base import QuadMartinContext, handle_exception
from quadmartin.presentation.cli.main import cli, main

__all__ = ["cli", "main", "QuadMartinContext", "handle_exception"]
