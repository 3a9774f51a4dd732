"""
Base CLI functionality and shared utilities.

Contains common patterns used across CLI commands including error handling,
model options, configuration resolution and progress indicators.
"""

import sys
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Any, TypeVar

import click
import numpy as np
import scipy
from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
)

from quadmartin import __version__
from quadmartin.application.services import ModelService
from quadmartin.domain.models import NormalizedModel, SpaceTimeMap
from quadmartin.shared.config import QuadMartinConfig, get_config
from quadmartin.shared.exceptions import ConvergenceError, QuadMartinError

from ..formatters import OutputTable, OutputTableFormatter
from ..validators import GridValidator, PointValidator, ValidationError

# Use unlimited width to prevent table truncation in tests
console = Console(width=None)
# Messages and progress go to stderr so CSV on stdout stays clean
err_console = Console(stderr=True, width=None)

F = TypeVar("F", bound=Callable[..., Any])

CONTEXT_SETTINGS = {
    "help_option_names": ["-h", "--help"],
    "max_content_width": 120,
}


class QuadMartinContext:
    """CLI context object to pass data between commands."""

    def __init__(self) -> None:
        self.config = get_config()
        self.debug = self.config.debug
        self.verbose = False

    def resolved(self, overrides: dict[str, Any]) -> QuadMartinConfig:
        """Configuration with command-line flags applied on top."""
        return self.config.merged(overrides)


def _debug_enabled() -> bool:
    ctx = click.get_current_context(silent=True)
    return bool(ctx is not None and getattr(ctx.obj, "debug", False))


def handle_exception(func: F) -> F:
    """Decorator to handle exceptions gracefully in CLI commands."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except QuadMartinError as e:
            err_console.print(f"[red]Error:[/red] {e}", style="bold red")
            if _debug_enabled():
                err_console.print_exception(show_locals=False)
            sys.exit(e.exit_code)
        except Exception as e:
            err_console.print(f"[red]Unexpected error:[/red] {e}", style="bold red")
            if _debug_enabled():
                err_console.print_exception(show_locals=False)
            sys.exit(1)

    return wrapper  # type: ignore[return-value]


def create_progress() -> Progress:
    """Create a standard progress indicator."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        console=err_console,
    )


def create_simple_progress() -> Progress:
    """Create a simple progress indicator without progress bar."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=err_console,
    )


def _point_callback(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> tuple[float, float] | None:
    if value is None:
        return None
    try:
        return PointValidator().parse(value)
    except QuadMartinError as e:
        raise click.BadParameter(e.message, ctx=ctx, param=param) from e


_MODEL_OPTIONS = [
    click.option("--sigma1", type=float, help="Noise scale of the first coordinate"),
    click.option("--sigma2", type=float, help="Noise scale of the second coordinate"),
    click.option("--mu1", type=float, help="First drift component"),
    click.option("--mu2", type=float, help="Second drift component"),
    click.option("--r1", type=float, help="Reflection ratio on the vertical face"),
    click.option("--r2", type=float, help="Reflection ratio on the horizontal face"),
    click.option("--z0", callback=_point_callback, help="Starting point as 'x,y'"),
]


def model_options(func: F) -> F:
    """Attach the model parameter flags (they override the config file)."""
    for option in reversed(_MODEL_OPTIONS):
        func = option(func)
    return func


def model_overrides(options: dict[str, Any]) -> dict[str, Any]:
    """Flat config keys from the values collected by :func:`model_options`."""
    overrides = {key: options.get(key) for key in ("sigma1", "sigma2", "mu1", "mu2", "r1", "r2")}
    z0 = options.get("z0")
    if z0 is not None:
        overrides["z0_x"], overrides["z0_y"] = z0
    return overrides


# Common CLI options that can be reused
output_format_option = click.option(
    "--format",
    "output_format",
    default="csv",
    type=click.Choice(["table", "json", "csv"], case_sensitive=False),
    help="Output format",
)

output_file_option = click.option(
    "--out",
    "out_file",
    type=click.Path(dir_okay=False, writable=True),
    help="Write output to a file instead of stdout",
)

OutputFormatChoice = click.Choice(["table", "json", "csv"], case_sensitive=False)


def success_message(message: str) -> None:
    """Display a success message."""
    err_console.print(f"🎉 [bold green]{message}[/bold green]")


def warning_message(message: str) -> None:
    """Display a warning message."""
    err_console.print(f"⚠️  [bold yellow]{message}[/bold yellow]")


def error_message(message: str) -> None:
    """Display an error message."""
    err_console.print(f"❌ [bold red]{message}[/bold red]")


def info_message(message: str) -> None:
    """Display an info message."""
    err_console.print(f"ℹ️  [cyan]{message}[/cyan]")


def run_metadata(config: QuadMartinConfig, command: str, **extra: Any) -> dict[str, Any]:
    """Every input that affects the numbers of a command, plus versions."""
    metadata: dict[str, Any] = {
        "command": command,
        "quadmartin": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }
    for section in ("model", "series", "quadrature"):
        for key, value in getattr(config, section).model_dump().items():
            metadata[f"{section}.{key}"] = value
    metadata.update({key: value for key, value in extra.items() if value is not None})
    return metadata


def emit(table: OutputTable, output_format: str, out_file: str | None, title: str | None = None) -> None:
    """Write a result table to stdout or ``--out`` in the requested format."""
    output_format = output_format.lower()
    if output_format == "table":
        if out_file is not None:
            raise click.UsageError("--out needs --format csv or json")
        OutputTableFormatter(console).format(table, title=title)
        return
    if out_file is not None:
        table.write(output_format, Path(out_file))
        info_message(f"Wrote {len(table.rows)} row(s) to {out_file}")
    else:
        click.echo(table.render(output_format), nl=False)


def normalized_model(config: QuadMartinConfig) -> tuple[NormalizedModel, SpaceTimeMap]:
    """Normalized model and dilation of the configured parameters."""
    service = ModelService()
    return service.normalize(service.params_from_config(config.model))


def require_converged(failures: list[str]) -> None:
    """Raise after output has been written if any series hit ``n_max``."""
    if failures:
        raise ConvergenceError(
            failures[0], f"{len(failures)} value(s) did not converge within n_max terms"
        )


def parse_grid(
    text: str | None, default: np.ndarray, lower: float = -np.inf, upper: float = np.inf
) -> np.ndarray:
    """Parse an optional grid option, falling back to ``default``."""
    if text is None:
        return default
    try:
        return GridValidator(lower, upper).parse(text)
    except ValidationError as e:
        raise click.BadParameter(e.message) from e
