"""
Main CLI entry point.

This module assembles all commands into the main CLI application.
"""

import sys
from pathlib import Path

import click

from quadmartin import __version__
from quadmartin.shared.config import QuadMartinConfig
from quadmartin.shared.exceptions import ConfigurationError
from quadmartin.shared.logging import configure_logging

from .base import CONTEXT_SETTINGS, QuadMartinContext, err_console
from .commands.config import config_commands
from .commands.greens import greens_commands
from .commands.kernel import kernel_commands
from .commands.model import model_commands
from .commands.simulate import simulate_commands
from .commands.transforms import transform_commands
from .commands.verify import verify_commands


@click.group(context_settings=CONTEXT_SETTINGS, invoke_without_command=True)
@click.option(
    "--debug",
    is_flag=True,
    help="Enable debug mode with detailed error information.",
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Enable verbose output.",
)
@click.option(
    "--config-file",
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Configuration file (.toml, .json or key=value lines).",
)
@click.option(
    "--threads",
    type=click.IntRange(1, 64),
    help="Worker threads for Monte Carlo batches (results do not depend on it).",
)
@click.version_option(version=__version__, prog_name="quadmartin")
@click.pass_context
def cli(
    ctx: click.Context,
    debug: bool,
    verbose: bool,
    config_file: Path | None,
    threads: int | None,
) -> None:
    """
    🎯 quadmartin - Martin boundary and Green's function of a degenerate
    reflected Brownian motion in the quadrant.

    Compensation series for the boundary transforms, Martin harmonic
    functions, directional Green density asymptotics and contour inversion,
    all cross-checked by a seeded Monte Carlo simulator. Results go to stdout
    as CSV (or JSON with --format json).

    Examples:
        quadmartin critical --mu1 0.2 --mu2 0.8 --r1 0 --r2 2
        quadmartin --config run.cfg green --at 3,2
        quadmartin verify --quick
    """
    try:
        ctx.ensure_object(QuadMartinContext)
    except ConfigurationError as e:
        err_console.print(f"[red]✗[/red] Invalid environment configuration: {e}")
        sys.exit(e.exit_code)
    ctx.obj.debug = debug or ctx.obj.debug
    ctx.obj.verbose = verbose

    if config_file:
        try:
            ctx.obj.config = QuadMartinConfig.from_file(config_file, base=ctx.obj.config)
        except ConfigurationError as e:
            err_console.print(f"[red]✗[/red] Failed to load config file: {e}")
            sys.exit(e.exit_code)
    if threads is not None:
        ctx.obj.config = ctx.obj.config.merged({"threads": threads})

    configure_logging(ctx.obj.config.logging, debug=ctx.obj.debug, verbose=verbose)
    if verbose and config_file:
        err_console.print(f"[green]✓[/green] Loaded configuration from {config_file}")

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


def register_commands(cli_group: click.Group) -> None:
    """Register all commands with the main CLI."""
    for commands in (
        model_commands,
        kernel_commands,
        transform_commands,
        greens_commands,
        simulate_commands,
        verify_commands,
        config_commands,
    ):
        for command in commands:
            cli_group.add_command(command)


# Register all commands
register_commands(cli)


def main() -> None:
    """Main entry point for the CLI application."""
    cli()


if __name__ == "__main__":
    main()
