"""Euler simulation of the reflected process and Monte Carlo estimators."""

from .engine import Observer, SimulationPlan, Simulator, stream
from .estimators import (
    arc_mean,
    check_harmonic,
    estimate_boundary_density,
    estimate_green_box,
    estimate_laplace,
    hitting_distribution_arc,
)
from .skorokhod import reflect, reflection_matrix, step_reflect

__all__ = [
    "Observer",
    "SimulationPlan",
    "Simulator",
    "arc_mean",
    "check_harmonic",
    "estimate_boundary_density",
    "estimate_green_box",
    "estimate_laplace",
    "hitting_distribution_arc",
    "reflect",
    "reflection_matrix",
    "step_reflect",
    "stream",
]
