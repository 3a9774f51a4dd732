"""
Monte Carlo command.

Runs one experiment of the reflected process with an explicit seed and
reports the estimate with its standard error.
"""

from typing import Any

import click

from quadmartin.application.services import (
    Experiment,
    ExperimentResult,
    GreensService,
    SimulationService,
)
from quadmartin.infrastructure.simulation import SimulationPlan
from quadmartin.shared.config import QuadMartinConfig

from ...formatters import OutputTable
from ...validators import BoxValidator, IntervalValidator, ValidationError
from ..base import (
    create_simple_progress,
    emit,
    handle_exception,
    model_options,
    model_overrides,
    output_file_option,
    output_format_option,
    run_metadata,
    warning_message,
)

FACES = ["y=0", "x=0"]


def _parse(validator: BoxValidator | IntervalValidator, text: str | None, hint: str) -> Any:
    if text is None:
        raise click.UsageError(f"{hint} is required for this experiment")
    try:
        return validator.parse(text)
    except ValidationError as e:
        raise click.BadParameter(e.message, param_hint=hint) from e


def _require(value: float | None, hint: str) -> float:
    if value is None:
        raise click.UsageError(f"{hint} is required for this experiment")
    return value


def _run(
    service: SimulationService,
    experiment: Experiment,
    plan: SimulationPlan,
    z0: tuple[float, float],
    params: dict[str, Any],
) -> ExperimentResult:
    match experiment:
        case Experiment.GREEN_BOX:
            return service.green_box(z0, _parse(BoxValidator(), params["box"], "--box"), plan)
        case Experiment.BOUNDARY:
            interval = _parse(IntervalValidator(), params["interval"], "--interval")
            return service.boundary(z0, params["axis"], interval, plan)
        case Experiment.LAPLACE:
            face = None if params["face"] == "interior" else params["face"]
            return service.laplace(z0, _require(params["x"], "--x"), _require(params["y"], "--y"), plan, face)
        case Experiment.HARMONICITY:
            alpha = None if params["control"] else _require(params["alpha"], "--alpha")
            return service.harmonicity(z0, alpha, params["t"], plan)
        case Experiment.ARC:
            return service.arc(z0, _require(params["alpha"], "--alpha"), plan)


def _reference(
    config: QuadMartinConfig, service: SimulationService, result: ExperimentResult, z0: tuple[float, float]
) -> float | str:
    """Analytic counterpart of an estimate, or an empty cell when none applies."""
    inputs = result.inputs
    match result.experiment:
        case Experiment.GREEN_BOX:
            greens = GreensService.from_config(config)
            a = 0.5 * (float(inputs["x_lo"]) + float(inputs["x_hi"]))
            b = 0.5 * (float(inputs["y_lo"]) + float(inputs["y_hi"]))
            return greens.green_numeric(z0, a, b, greens.quadrature_spec(config))
        case Experiment.BOUNDARY:
            if inputs["axis"] != "y=0" or not service.normalized:
                return ""
            greens = GreensService.from_config(config)
            a = 0.5 * (float(inputs["lo"]) + float(inputs["hi"]))
            return 0.5 * greens.green_on_axis(z0, a, greens.quadrature_spec(config))
        case Experiment.LAPLACE:
            face = None if inputs["face"] == "interior" else str(inputs["face"])
            return service.laplace_reference(z0, float(inputs["x"]), float(inputs["y"]), face)
        case Experiment.HARMONICITY:
            return "" if inputs["alpha"] == "control" else 1.0
        case Experiment.ARC:
            return result.diagnostics["h_z0"]


@click.command("simulate")
@model_options
@click.option(
    "--experiment",
    type=click.Choice([e.value for e in Experiment], case_sensitive=False),
    required=True,
    help="Monte Carlo experiment to run",
)
@click.option("--seed", type=int, required=True, help="Seed of the counter-based generator")
@click.option("--n-paths", type=int, help="Number of paths")
@click.option("--dt", type=float, help="Euler step")
@click.option("--t-max", type=float, help="Simulation horizon")
@click.option("--batch-size", type=int, help="Paths per random stream")
@click.option("--antithetic/--no-antithetic", default=None, help="Pair each path with its mirrored noise")
@click.option("--box", help="green-box: 'x_lo,x_hi,y_lo,y_hi'")
@click.option("--axis", type=click.Choice(FACES), default="y=0", show_default=True, help="boundary: face")
@click.option("--interval", help="boundary: 'lo,hi' along the face")
@click.option("--x", "x_arg", type=float, help="laplace: first transform argument")
@click.option("--y", "y_arg", type=float, help="laplace: second transform argument")
@click.option(
    "--face",
    type=click.Choice(["interior", *FACES]),
    default="interior",
    show_default=True,
    help="laplace: occupation measure or a face local time",
)
@click.option("--alpha", type=float, help="harmonicity/arc: angle of h_alpha in the normalized family")
@click.option("--t", "t_arg", type=float, default=1.0, show_default=True, help="harmonicity: time")
@click.option("--control", is_flag=True, help="harmonicity: use the non-harmonic control h(z)=z1")
@click.option("--compare", is_flag=True, help="Add the analytic reference value as a column")
@output_format_option
@output_file_option
@click.pass_context
@handle_exception
def simulate_cmd(
    ctx: click.Context,
    experiment: str,
    seed: int,
    n_paths: int | None,
    dt: float | None,
    t_max: float | None,
    batch_size: int | None,
    antithetic: bool | None,
    box: str | None,
    axis: str,
    interval: str | None,
    x_arg: float | None,
    y_arg: float | None,
    face: str,
    alpha: float | None,
    t_arg: float,
    control: bool,
    compare: bool,
    output_format: str,
    out_file: str | None,
    **options: Any,
) -> None:
    """
    🎲 Run a Monte Carlo experiment on the reflected process.

    Experiments: green-box (occupation density of a box), boundary (local-time
    density on a face interval), laplace (transform of the occupation measure
    or of a face local time), harmonicity (E[h(Z_t)]/h(z0)), arc (average of
    h_alpha at the first exit through the unit arc). Columns: the experiment
    inputs, diagnostics, mean, se, n and, with --compare, reference.

    Examples:
        quadmartin simulate --experiment green-box --box 2.75,3.25,1.75,2.25 --seed 1
        quadmartin simulate --experiment harmonicity --alpha 0.5 --t 1 --seed 7 --n-paths 20000
    """
    overrides = model_overrides(options) | {
        "seed": seed,
        "n_paths": n_paths,
        "dt": dt,
        "t_max": t_max,
        "batch_size": batch_size,
        "antithetic": antithetic,
    }
    config = ctx.obj.resolved(overrides)
    service = SimulationService.from_config(config)
    plan = service.plan(config)
    z0 = config.model.z0
    kind = Experiment(experiment.lower())
    params = {
        "box": box,
        "axis": axis,
        "interval": interval,
        "x": x_arg,
        "y": y_arg,
        "face": face,
        "alpha": alpha,
        "t": t_arg,
        "control": control,
    }

    with create_simple_progress() as progress:
        progress.add_task(f"Simulating {plan.n_paths} paths ({kind.value})...", total=None)
        result = _run(service, kind, plan, z0, params)

    if result.diagnostics.get("excluded"):
        warning_message(f"{int(result.diagnostics['excluded'])} path(s) did not reach the arc by t_max")

    record: dict[str, Any] = dict(result.row())
    if compare:
        record["reference"] = _reference(config, service, result, z0)

    table = OutputTable(
        list(record),
        metadata=run_metadata(
            config,
            "simulate",
            experiment=kind.value,
            z0=list(z0),
            **{f"montecarlo.{key}": value for key, value in config.montecarlo.model_dump().items()},
        ),
    )
    table.add_row(*record.values())
    emit(table, output_format, out_file, title=f"Monte Carlo: {kind.value}")


# Register commands for import
simulate_commands = [simulate_cmd]
