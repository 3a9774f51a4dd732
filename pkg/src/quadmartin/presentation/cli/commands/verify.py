"""
Acceptance suite command.
"""

import sys

import click

from quadmartin.application.services import VerificationService

from ...formatters import OutputTable, VerificationFormatter
from ..base import (
    console,
    create_progress,
    emit,
    error_message,
    handle_exception,
    output_file_option,
    output_format_option,
    run_metadata,
    success_message,
)


@click.command("verify")
@click.option("--quick", is_flag=True, help="Desk-scale grids and Monte Carlo sizes")
@click.option(
    "--only", type=click.IntRange(1, 14), multiple=True, help="Run only this criterion (repeatable)"
)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the Monte Carlo criteria")
@click.option(
    "--format",
    "output_format",
    default="table",
    type=click.Choice(["table", "json", "csv"], case_sensitive=False),
    help="Output format",
)
@output_file_option
@click.pass_context
@handle_exception
def verify_cmd(
    ctx: click.Context,
    quick: bool,
    only: tuple[int, ...],
    seed: int,
    output_format: str,
    out_file: str | None,
) -> None:
    """
    🔬 Run the numbered acceptance criteria on the reference models.

    Every criterion prints its measured value, bound and status. Exits with
    status 1 when any criterion fails.

    Examples:
        quadmartin verify --quick
        quadmartin verify --only 2 --only 13
        quadmartin --threads 4 verify --format csv --out acceptance.csv
    """
    config = ctx.obj.config
    service = VerificationService(
        quick=quick,
        seed=seed,
        threads=config.montecarlo.threads,
        batch_size=config.montecarlo.batch_size,
    )
    selected = list(only) or sorted(service.criteria)

    with create_progress() as progress:
        task = progress.add_task("Running acceptance criteria...", total=len(selected))

        def on_start(number: int, name: str) -> None:
            if number != selected[0]:
                progress.advance(task)
            progress.update(task, description=f"[{number}] {name}")

        results = service.run(selected, on_start)
        progress.update(task, completed=len(selected))

    if output_format.lower() == "table" and out_file is None:
        VerificationFormatter(console).format(results)
    else:
        table = OutputTable(
            ["criterion", "name", "measured", "bound", "passed", "seconds", "detail"],
            metadata=run_metadata(config, "verify", quick=quick, seed=seed, only=list(only) or None),
        )
        for row in results:
            table.add_row(row.number, row.name, row.measured, row.bound, row.passed, row.seconds, row.detail)
        emit(table, output_format, out_file)

    failed = [row for row in results if not row.passed]
    if failed:
        error_message(f"{len(failed)} of {len(results)} check(s) failed")
        sys.exit(1)
    success_message(f"All {len(results)} checks passed")


# Register commands for import
verify_commands = [verify_cmd]
