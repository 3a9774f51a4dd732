"""
Model commands.

Commands for checking the admissibility of the parameters and for the
space-time dilation to the normalized model.
"""

from typing import Any

import click

from quadmartin.application.services import ModelService
from quadmartin.shared.exceptions import ModelValidationError

from ...formatters import OutputTable, ValidationReportFormatter
from ..base import (
    console,
    emit,
    handle_exception,
    model_options,
    model_overrides,
    output_file_option,
    output_format_option,
    run_metadata,
)


@click.command("validate")
@model_options
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def validate_cmd(ctx: click.Context, output_format: str, out_file: str | None, **options: Any) -> None:
    """
    ✅ Check the parameters against every admissibility condition.

    Columns: check, passed, detail. Exits with status 2 when any check fails.

    Examples:
        quadmartin validate --mu1 0.5 --mu2 0.5 --r1 0 --r2 0
        quadmartin --config model.cfg validate --format table
    """
    config = ctx.obj.resolved(model_overrides(options))
    service = ModelService()
    report = service.validate(service.params_from_config(config.model))

    if output_format.lower() == "table":
        ValidationReportFormatter(console).format(report)
    else:
        table = OutputTable(["check", "passed", "detail"], metadata=run_metadata(config, "validate"))
        for check in report.checks:
            table.add_row(check.name, check.passed, check.detail)
        emit(table, output_format, out_file)

    if not report.passed:
        raise ModelValidationError(
            "failed checks: " + ", ".join(report.failed), failed_checks=report.failed
        )


@click.command("normalize")
@model_options
@click.option("--alpha", type=float, help="Also map this angle (radians, in [0, pi/2])")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def normalize_cmd(
    ctx: click.Context, alpha: float | None, output_format: str, out_file: str | None, **options: Any
) -> None:
    """
    📐 Dilate the model to unit scales and unit total drift.

    Columns: mu1, mu2, r1, r2, lambda, scale_x, scale_y, time_factor, the
    mapped starting point and, with --alpha, the mapped angle.

    Examples:
        quadmartin normalize --sigma1 2 --sigma2 1 --mu1 1 --mu2 1 --r1 0.5 --r2 0.5
    """
    config = ctx.obj.resolved(model_overrides(options))
    service = ModelService()
    model, mapping = service.normalize(service.params_from_config(config.model))
    z0 = service.map_point(mapping, config.model.z0)

    header = ["mu1", "mu2", "r1", "r2", "lambda", "scale_x", "scale_y", "time_factor", "z0_x", "z0_y"]
    row: list[float] = [
        model.mu1,
        model.mu2,
        model.r1,
        model.r2,
        mapping.lam,
        mapping.scale_x,
        mapping.scale_y,
        mapping.time_factor,
        z0[0],
        z0[1],
    ]
    if alpha is not None:
        header += ["alpha", "alpha_normalized"]
        row += [alpha, service.map_angle(mapping, alpha)]

    table = OutputTable(header, metadata=run_metadata(config, "normalize", alpha=alpha))
    table.add_row(*row)
    emit(table, output_format, out_file, title="Normalized model")


# Register commands for import
model_commands = [validate_cmd, normalize_cmd]
