"""
Kernel commands.

Scans of the kernel parabola and the critical data of the normalized model.
"""

from typing import Any

import click
import numpy as np

from quadmartin.domain.kernel import Kernel

from ...formatters import OutputTable
from ..base import (
    emit,
    handle_exception,
    model_options,
    model_overrides,
    normalized_model,
    output_file_option,
    output_format_option,
    parse_grid,
    run_metadata,
)


@click.command("kernel-scan")
@model_options
@click.option("--s-grid", help="Parabola parameters as start:stop:num or a comma list")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def kernel_scan(
    ctx: click.Context, s_grid: str | None, output_format: str, out_file: str | None, **options: Any
) -> None:
    """
    📈 Tabulate the kernel parabola and the reflection forms on it.

    Columns: s, x, y, gamma1, gamma2, gamma (the last is zero up to rounding).
    The default grid runs from s_min - 0.5 to s_max + 0.5 in 21 points.
    """
    config = ctx.obj.resolved(model_overrides(options))
    model, _ = normalized_model(config)
    kernel = Kernel(model)
    grid = parse_grid(s_grid, np.linspace(kernel.s_min - 0.5, kernel.s_max + 0.5, 21))

    table = OutputTable(
        ["s", "x", "y", "gamma1", "gamma2", "gamma"],
        metadata=run_metadata(config, "kernel-scan", s_grid=s_grid),
    )
    for s in grid:
        x, y = kernel.point(float(s))
        table.add_row(float(s), x, y, kernel.gamma1(x, y), kernel.gamma2(x, y), kernel.gamma(x, y))
    emit(table, output_format, out_file, title="Kernel parabola")


@click.command("critical")
@model_options
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def critical_cmd(ctx: click.Context, output_format: str, out_file: str | None, **options: Any) -> None:
    """
    🎯 Show the critical parameters, pole flags and critical angles.

    Columns: quantity, value.

    Examples:
        quadmartin critical --mu1 0.2 --mu2 0.8 --r1 0 --r2 2
    """
    config = ctx.obj.resolved(model_overrides(options))
    model, _ = normalized_model(config)
    data = Kernel(model).critical
    table = OutputTable(["quantity", "value"], metadata=run_metadata(config, "critical"))
    for name, value in data.rows():
        table.add_row(name, value)
    emit(table, output_format, out_file, title="Critical data")


# Register commands for import
kernel_commands = [kernel_scan, critical_cmd]
