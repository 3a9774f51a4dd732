"""
Configuration management commands.

Commands for showing the resolved configuration and writing it as TOML.
"""

from pathlib import Path

import click
from rich.panel import Panel

from ..base import console, handle_exception, info_message, success_message

DEFAULT_CONFIG_FILE = Path("quadmartin.toml")


@click.command("config")
@click.option("--show", is_flag=True, help="Show current configuration")
@click.option("--init", is_flag=True, help="Write the current configuration to a TOML file")
@click.option(
    "--file",
    "config_file",
    type=click.Path(dir_okay=False, path_type=Path),
    help=f"Configuration file path (default {DEFAULT_CONFIG_FILE})",
)
@click.pass_context
@handle_exception
def config_cmd(ctx: click.Context, show: bool, init: bool, config_file: Path | None) -> None:
    """
    ⚙️ Manage quadmartin configuration.

    Shows the configuration after defaults, QUADMARTIN_* environment
    variables and --config-file have been applied, or writes it to a file.

    Examples:
        quadmartin config --show
        quadmartin --config-file run.cfg config --init --file run.toml
    """
    config = ctx.obj.config

    if show:
        model = config.model
        series = config.series
        quad = config.quadrature
        mc = config.montecarlo
        config_text = f"""
[bold]Model:[/bold]
  sigma: ({model.sigma1:g}, {model.sigma2:g})
  mu: ({model.mu1:g}, {model.mu2:g})
  r: ({model.r1:g}, {model.r2:g})
  z0: ({model.z0_x:g}, {model.z0_y:g})

[bold]Series:[/bold]
  Tolerance: {series.tol:g}
  Max Terms: {series.n_max}
  Harmonic Ladder Terms: {series.harmonic_terms}

[bold]Quadrature:[/bold]
  Epsilon: {"min(mu)/4" if quad.epsilon is None else f"{quad.epsilon:g}"}
  v_max: {"automatic" if quad.v_max is None else f"{quad.v_max:g}"}
  Tolerances: rel {quad.rel_tol:g}, abs {quad.abs_tol:g}

[bold]Monte Carlo:[/bold]
  Paths: {mc.n_paths}
  dt: {mc.dt:g}, t_max: {mc.t_max:g}
  Seed: {"required per run" if mc.seed is None else mc.seed}
  Batch Size: {mc.batch_size}
  Threads: {mc.threads}
  Antithetic: {mc.antithetic}

[bold]Logging:[/bold]
  Level: {config.logging.level}
  File: {config.logging.file_path or "Console only"}

[bold]Application:[/bold]
  Debug Mode: {config.debug}
        """.strip()

        panel = Panel(
            config_text,
            title="Configuration",
            title_align="left",
            border_style="blue",
        )
        console.print(panel)

    elif init:
        config_path = config_file or DEFAULT_CONFIG_FILE
        info_message(f"Writing configuration to {config_path}")
        config.save_to_file(config_path)
        success_message(f"Configuration saved to {config_path}")

    else:
        console.print("Use --show to view current config or --init to write a config file")


# Register commands for import
config_commands = [config_cmd]
