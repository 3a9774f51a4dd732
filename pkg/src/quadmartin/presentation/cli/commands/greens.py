"""
Green density commands.

Directional asymptotics, numerical inversion of the Green density and the
Martin kernel limits along directions.
"""

import math
from typing import Any

import click
import numpy as np

from quadmartin.application.services import GreensService

from ...formatters import OutputTable
from ...validators import PointValidator, ValidationError
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

HALF_PI = math.pi / 2


def _blank(value: float | None) -> float | str:
    return "" if value is None else value


def _angle_grid(text: str | None, service: GreensService, num: int) -> np.ndarray:
    """Angles from ``text`` or an even grid of ``[0, pi/2]`` plus the critical angles."""
    default = np.linspace(0.0, HALF_PI, num)
    if service.normalized:
        crit = service.kernel.critical
        default = np.unique(np.concatenate([default, [crit.alpha_star, crit.alpha_star2]]))
    return parse_grid(text, default, lower=0.0, upper=HALF_PI)


@click.command("asymptotics")
@model_options
@click.option("--alpha-grid", help="Angles in [0, pi/2] (start:stop:num or list)")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def asymptotics_cmd(
    ctx: click.Context, alpha_grid: str | None, output_format: str, out_file: str | None, **options: Any
) -> None:
    """
    🧭 Classify directions and give the leading Green density asymptotics.

    g(r e_alpha) ~ (constant r^power + secondary_constant r^secondary_power) exp(-rho r).
    Columns: alpha, regime, rho, power, constant, secondary_power,
    secondary_constant (empty when absent). The default grid has 13 angles
    in [0, pi/2] plus alpha* and alpha** for normalized models.

    Examples:
        quadmartin asymptotics --mu1 0.2 --mu2 0.8 --r1 0 --r2 2 --z0 1,1
    """
    config = ctx.obj.resolved(model_overrides(options))
    service = GreensService.from_config(config)
    z0 = config.model.z0

    table = OutputTable(
        ["alpha", "regime", "rho", "power", "constant", "secondary_power", "secondary_constant"],
        metadata=run_metadata(config, "asymptotics", alpha_grid=alpha_grid),
    )
    for alpha in map(float, _angle_grid(alpha_grid, service, 13)):
        result = service.asymptotic_g(z0, alpha)
        table.add_row(
            alpha,
            result.regime.value,
            result.decay_rate,
            result.power,
            result.constant,
            _blank(result.secondary_power),
            _blank(result.secondary_constant),
        )
    emit(table, output_format, out_file, title="Green density asymptotics")


def _targets(at: tuple[str, ...], a_grid: str | None, b_grid: str | None) -> list[tuple[float, float]]:
    if at and (a_grid or b_grid):
        raise click.UsageError("use either --at or --a-grid/--b-grid")
    if at:
        try:
            return [PointValidator().parse(text) for text in at]
        except ValidationError as e:
            raise click.BadParameter(e.message, param_hint="--at") from e
    if not (a_grid and b_grid):
        raise click.UsageError("give target points with --at or with both --a-grid and --b-grid")
    a_values = parse_grid(a_grid, np.empty(0), lower=0.0)
    b_values = parse_grid(b_grid, np.empty(0), lower=0.0)
    return [(float(a), float(b)) for a in a_values for b in b_values]


@click.command("green")
@model_options
@click.option("--at", multiple=True, help="Target point 'a,b' (repeatable); b=0 extrapolates to the axis")
@click.option("--a-grid", help="Abscissae of a target grid (start:stop:num or list)")
@click.option("--b-grid", help="Ordinates of a target grid (start:stop:num or list)")
@click.option("--epsilon", type=float, help="Contour abscissa is -epsilon (default min(mu)/4)")
@click.option("--v-max", type=float, help="Truncation of the contour (automatic if unset)")
@click.option("--rel-tol", type=float, help="Relative quadrature tolerance")
@click.option("--abs-tol", type=float, help="Absolute quadrature tolerance")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def green_cmd(
    ctx: click.Context,
    at: tuple[str, ...],
    a_grid: str | None,
    b_grid: str | None,
    epsilon: float | None,
    v_max: float | None,
    rel_tol: float | None,
    abs_tol: float | None,
    output_format: str,
    out_file: str | None,
    **options: Any,
) -> None:
    """
    🟢 Evaluate the Green density by vertical-contour quadrature.

    Columns: a, b, g. Points with b=0 give g(a, 0+) by extrapolation
    (normalized models only).

    Examples:
        quadmartin green --mu1 0.5 --mu2 0.5 --r1 0 --r2 0 --z0 1,1 --at 3,2 --at 2,3
        quadmartin green --a-grid 1:4:7 --b-grid 0.5,1 --rel-tol 1e-10
    """
    targets = _targets(at, a_grid, b_grid)
    overrides = model_overrides(options) | {
        "epsilon": epsilon,
        "v_max": v_max,
        "rel_tol": rel_tol,
        "abs_tol": abs_tol,
    }
    config = ctx.obj.resolved(overrides)
    service = GreensService.from_config(config)
    spec = service.quadrature_spec(config)
    z0 = config.model.z0

    table = OutputTable(
        ["a", "b", "g"],
        metadata=run_metadata(config, "green", epsilon_used=spec.epsilon),
    )
    for a, b in targets:
        value = service.green_on_axis(z0, a, spec) if b == 0.0 else service.green_numeric(z0, a, b, spec)
        table.add_row(a, b, value)
    emit(table, output_format, out_file, title="Green density")


@click.command("martin-scan")
@model_options
@click.option("--alpha-grid", help="Angles in [0, pi/2] (start:stop:num or list)")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def martin_scan_cmd(
    ctx: click.Context, alpha_grid: str | None, output_format: str, out_file: str | None, **options: Any
) -> None:
    """
    🗺️  Scan the Martin kernel limit h_alpha(z0)/h_alpha(0) over directions.

    Angles outside [alpha*, alpha**] are clamped. Columns: alpha, k,
    tail_bound, converged. Exits with code 3 if a ratio did not converge. The
    default grid has 19 angles in [0, pi/2] plus the critical angles.

    Examples:
        quadmartin martin-scan --mu1 0.2 --mu2 0.8 --r1 0 --r2 2 --z0 1,1
    """
    config = ctx.obj.resolved(model_overrides(options))
    service = GreensService.from_config(config)
    z0 = config.model.z0

    table = OutputTable(
        ["alpha", "k", "tail_bound", "converged"],
        metadata=run_metadata(config, "martin-scan", alpha_grid=alpha_grid),
    )
    failures: list[str] = []
    for alpha in map(float, _angle_grid(alpha_grid, service, 19)):
        value = service.martin_kernel(z0, alpha)
        if not value.converged:
            failures.append(f"martin kernel at alpha={alpha}")
        table.add_row(alpha, value.real, value.tail_bound, value.converged)
    emit(table, output_format, out_file, title="Martin kernel limits")
    require_converged(failures)


# Register commands for import
greens_commands = [asymptotics_cmd, green_cmd, martin_scan_cmd]
