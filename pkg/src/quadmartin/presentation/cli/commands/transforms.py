"""
Transform commands.

Boundary Laplace transforms from the compensation series and the Martin
harmonic functions built from them.
"""

from typing import Any

import click
import numpy as np

from quadmartin.application.services import GreensService

from ...formatters import OutputTable
from ..base import (
    emit,
    handle_exception,
    model_options,
    model_overrides,
    output_file_option,
    output_format_option,
    parse_grid,
    require_converged,
    run_metadata,
)


@click.command("transforms")
@model_options
@click.option("--s-grid", help="Parabola parameters inside the valid window (start:stop:num or list)")
@click.option(
    "--face",
    type=click.Choice(["phi2", "phi1", "both"], case_sensitive=False),
    default="both",
    show_default=True,
    help="Which boundary transform to evaluate",
)
@click.option("--tol", type=float, help="Series tolerance")
@click.option("--n-max", type=int, help="Maximum number of series terms")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def transforms_cmd(
    ctx: click.Context,
    s_grid: str | None,
    face: str,
    tol: float | None,
    n_max: int | None,
    output_format: str,
    out_file: str | None,
    **options: Any,
) -> None:
    """
    🧮 Evaluate phi2(x(s)) and phi1(y(s)) by the compensation series.

    Columns: transform, s, argument, value, n_terms, tail_bound, converged.
    The starting point is mapped to normalized coordinates first. The default
    grid has 11 interior points of the valid window. Exits with status 3 if a
    series hit n_max.

    Examples:
        quadmartin transforms --mu1 0.5 --mu2 0.5 --r1 0 --r2 0 --z0 1,1
        quadmartin transforms --face phi2 --s-grid -0.4:0.4:9 --tol 1e-14
    """
    overrides = model_overrides(options) | {"tol": tol, "n_max": n_max}
    config = ctx.obj.resolved(overrides)
    service = GreensService.from_config(config)
    compensation = service.compensation
    kernel = service.kernel
    z0 = service.mapping.apply(config.model.z0)

    lo, hi = compensation.valid_window()
    grid = parse_grid(s_grid, np.linspace(lo, hi, 13)[1:-1], lower=lo, upper=hi)
    faces = ("phi2", "phi1") if face.lower() == "both" else (face.lower(),)

    table = OutputTable(
        ["transform", "s", "argument", "value", "n_terms", "tail_bound", "converged"],
        metadata=run_metadata(config, "transforms", s_grid=s_grid, face=face),
    )
    failures: list[str] = []
    for name in faces:
        for s in map(float, grid):
            if name == "phi2":
                value, argument = compensation.phi2_series(s, z0), kernel.x_of_s(s)
            else:
                value, argument = compensation.phi1_series(s, z0), kernel.y_of_s(s)
            if not value.converged:
                failures.append(f"{name} at s={s}")
            table.add_row(
                name, s, float(argument), value.real, value.n_terms, value.tail_bound, value.converged
            )

    emit(table, output_format, out_file, title="Boundary transforms")
    require_converged(failures)


@click.command("harmonic")
@model_options
@click.option("--alpha-grid", help="Angles in [alpha*, alpha**] (start:stop:num or list)")
@click.option("--tol", type=float, help="Series tolerance")
@click.option("--terms", "harmonic_terms", type=int, help="Ladder indices per side of h_alpha")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def harmonic_cmd(
    ctx: click.Context,
    alpha_grid: str | None,
    tol: float | None,
    harmonic_terms: int | None,
    output_format: str,
    out_file: str | None,
    **options: Any,
) -> None:
    """
    🌀 Evaluate the Martin harmonic functions h_alpha at the starting point.

    Angles index the family of the normalized model. Columns: alpha, case,
    value, n_terms, tail_bound, converged. The default grid has 9 angles from
    alpha* to alpha** inclusive.

    Examples:
        quadmartin harmonic --mu1 0.2 --mu2 0.8 --r1 0 --r2 2 --z0 1,1
        quadmartin harmonic --alpha-grid 0.3,0.6,0.9
    """
    overrides = model_overrides(options) | {"tol": tol, "harmonic_terms": harmonic_terms}
    config = ctx.obj.resolved(overrides)
    service = GreensService.from_config(config)
    crit = service.kernel.critical
    z0 = service.mapping.apply(config.model.z0)

    grid = parse_grid(
        alpha_grid,
        np.linspace(crit.alpha_star, crit.alpha_star2, 9),
        lower=crit.alpha_star,
        upper=crit.alpha_star2,
    )

    table = OutputTable(
        ["alpha", "case", "value", "n_terms", "tail_bound", "converged"],
        metadata=run_metadata(config, "harmonic", alpha_grid=alpha_grid),
    )
    failures: list[str] = []
    for alpha in map(float, grid):
        result = service.compensation.h_alpha(z0, alpha)
        if not result.converged:
            failures.append(f"h_alpha at alpha={alpha}")
        table.add_row(
            alpha, result.case_tag.value, result.value, result.n_terms, result.tail_bound, result.converged
        )

    emit(table, output_format, out_file, title="Martin harmonic functions")
    require_converged(failures)


# Register commands for import
transform_commands = [transforms_cmd, harmonic_cmd]
