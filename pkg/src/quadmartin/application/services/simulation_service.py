"""Monte Carlo experiment service."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from quadmartin.application.services.model_service import ModelService
from quadmartin.domain.compensation import Compensation
from quadmartin.domain.harmonic import MartinHarmonic
from quadmartin.domain.kernel import Kernel
from quadmartin.domain.models import (
    Estimate,
    ModelParams,
    NormalizedModel,
    PathSample,
    Point,
    SeriesSettings,
    SpaceTimeMap,
)
from quadmartin.infrastructure.simulation import (
    SimulationPlan,
    Simulator,
    arc_mean,
    check_harmonic,
    estimate_boundary_density,
    estimate_green_box,
    estimate_laplace,
    hitting_distribution_arc,
)
from quadmartin.infrastructure.simulation.estimators import Box, PointFunction
from quadmartin.shared.config import QuadMartinConfig
from quadmartin.shared.exceptions import DomainError, SimulationError

logger = logging.getLogger(__name__)


class Experiment(str, Enum):
    """Monte Carlo experiments exposed by ``simulate``."""

    GREEN_BOX = "green-box"
    BOUNDARY = "boundary"
    LAPLACE = "laplace"
    HARMONICITY = "harmonicity"
    ARC = "arc"


@dataclass(frozen=True)
class ExperimentResult:
    """Estimate of one experiment with its inputs and diagnostics."""

    experiment: Experiment
    inputs: dict[str, float | str]
    estimate: Estimate
    diagnostics: dict[str, float] = field(default_factory=dict)

    def row(self) -> dict[str, float | str]:
        """Flat record: inputs, diagnostics, then ``mean, se, n``."""
        return {
            **self.inputs,
            **self.diagnostics,
            "mean": self.estimate.mean,
            "se": self.estimate.std_error,
            "n": self.estimate.n,
        }


class SimulationService:
    """Runs Monte Carlo experiments on the process in original coordinates.

    Harmonic functions are built on the normalized model and pulled back
    through the space-time map, ``h(z) = h_normalized(psi(z))``.
    """

    def __init__(
        self,
        params: ModelParams,
        settings: SeriesSettings | None = None,
        harmonic_terms: int | None = None,
    ) -> None:
        """Initialize simulation service.

        Raises:
            ModelValidationError: If the parameters are not admissible
        """
        self.params = params
        self.model, self.mapping = ModelService().normalize(params)
        self.simulator = Simulator(params)
        self.compensation = Compensation(Kernel(self.model), settings, harmonic_terms)
        logger.info(f"Initialized SimulationService for {params}")

    @classmethod
    def from_config(cls, config: QuadMartinConfig) -> "SimulationService":
        """Build from the model and series sections of the configuration."""
        settings = SeriesSettings(
            tol=config.series.tol, n_max=config.series.n_max, abs_floor=config.series.abs_floor
        )
        return cls(ModelService.params_from_config(config.model), settings, config.series.harmonic_terms)

    @classmethod
    def for_model(cls, model: NormalizedModel, harmonic_terms: int | None = None) -> "SimulationService":
        """Build for an already-normalized model."""
        return cls(model.as_params(), harmonic_terms=harmonic_terms)

    @staticmethod
    def plan(config: QuadMartinConfig, **overrides: object) -> SimulationPlan:
        """Resolve the Monte Carlo plan; the seed must come from the configuration or ``overrides``."""
        return SimulationPlan.from_config(config.montecarlo, **overrides)

    @property
    def normalized(self) -> bool:
        """True when the parameters already are in normalized form."""
        return self.mapping == SpaceTimeMap.identity()

    # harmonic functions in original coordinates

    def harmonic_function(self, alpha: float) -> PointFunction:
        """Vectorised ``z -> h_alpha(psi(z))`` for the normalized angle ``alpha``."""
        harmonic: MartinHarmonic = self.compensation.harmonic(alpha)
        scale = np.array([self.mapping.scale_x, self.mapping.scale_y])

        def h(points: np.ndarray) -> np.ndarray:
            return harmonic.evaluate(np.atleast_2d(points) * scale)

        return h

    @staticmethod
    def control_function(points: np.ndarray) -> np.ndarray:
        """Non-harmonic control ``h(z) = z1``."""
        return np.atleast_2d(points)[:, 0].copy()

    # experiments

    def green_box(self, z0: Point, box: Box, plan: SimulationPlan) -> ExperimentResult:
        """Expected occupation time of ``box`` divided by its area."""
        x_lo, x_hi, y_lo, y_hi = box
        area = (x_hi - x_lo) * (y_hi - y_lo)
        occupation, last = estimate_green_box(self.simulator, z0, box, plan)
        return ExperimentResult(
            experiment=Experiment.GREEN_BOX,
            inputs={"x_lo": x_lo, "x_hi": x_hi, "y_lo": y_lo, "y_hi": y_hi},
            estimate=occupation.scaled(1.0 / area),
            diagnostics={"last_visit_q99": last},
        )

    def boundary(
        self, z0: Point, axis: str, interval: tuple[float, float], plan: SimulationPlan
    ) -> ExperimentResult:
        """Boundary local-time density on ``axis`` over ``interval``."""
        estimate = estimate_boundary_density(self.simulator, z0, axis, interval, plan)
        return ExperimentResult(
            experiment=Experiment.BOUNDARY,
            inputs={"axis": axis, "lo": interval[0], "hi": interval[1]},
            estimate=estimate,
        )

    def laplace(
        self, z0: Point, x: float, y: float, plan: SimulationPlan, face: str | None = None
    ) -> ExperimentResult:
        """Laplace functional of the occupation measure or of a face local time."""
        estimate = estimate_laplace(self.simulator, z0, x, y, plan, face)
        return ExperimentResult(
            experiment=Experiment.LAPLACE,
            inputs={"x": x, "y": y, "face": face or "interior"},
            estimate=estimate,
        )

    def harmonicity(
        self, z0: Point, alpha: float | None, t: float, plan: SimulationPlan
    ) -> ExperimentResult:
        """``E[h(Z_t)]/h(z0)`` for ``h_alpha`` (normalized angle).

        The non-harmonic control ``z1`` is used when ``alpha`` is None.
        """
        h = self.control_function if alpha is None else self.harmonic_function(alpha)
        estimate = check_harmonic(self.simulator, h, z0, t, plan)
        return ExperimentResult(
            experiment=Experiment.HARMONICITY,
            inputs={"alpha": "control" if alpha is None else alpha, "t": t},
            estimate=estimate,
        )

    def arc(self, z0: Point, alpha: float, plan: SimulationPlan) -> ExperimentResult:
        """Average of ``h_alpha`` at the first crossing of the unit arc, with ``h_alpha(z0)``."""
        h = self.harmonic_function(alpha)
        sample = hitting_distribution_arc(self.simulator, z0, plan)
        estimate = arc_mean(h, sample)
        return ExperimentResult(
            experiment=Experiment.ARC,
            inputs={"alpha": alpha},
            estimate=estimate,
            diagnostics={
                "h_z0": float(h(np.array([z0], dtype=float))[0]),
                "excluded": float(sample.excluded),
            },
        )

    def path(
        self, z0: Point, t_max: float, dt: float, stream_id: int, seed: int, noise: bool = True
    ) -> PathSample:
        """Single trajectory with cumulative local times."""
        return self.simulator.simulate_path(z0, t_max, dt, stream_id, seed, noise)

    # analytic references

    def laplace_reference(self, z0: Point, x: float, y: float, face: str | None = None) -> float:
        """Analytic value of the Laplace functional estimated by :meth:`laplace`.

        Interior transforms are pulled back through the dilation; face
        transforms are available for normalized models only.
        """
        if face is None:
            xs, ys = x / self.mapping.scale_x, y / self.mapping.scale_y
            value = self.compensation.phi_interior(xs, ys, self.mapping.apply(z0))
            return value.real / self.mapping.time_factor
        if not self.normalized:
            raise DomainError("face transforms are compared for normalized models only", "face", face)
        if face == "y=0":
            return self.compensation.phi2_continued(x, z0).real
        if face == "x=0":
            return self.compensation.phi1_continued(y, z0).real
        raise SimulationError(f"unknown face {face!r}", experiment="laplace")

    def total_mass_reference(self, z0: Point) -> float:
        """``phi2(0)``: expected total local time on the horizontal face."""
        if not self.normalized:
            raise DomainError("total mass is compared for normalized models only", "z0", z0)
        return self.compensation.phi2_continued(0.0, z0).real

    @staticmethod
    def dt_allowance(plan: SimulationPlan, constant: float = 1.0) -> float:
        """Empirical Euler bias allowance ``C sqrt(dt)``."""
        return constant * math.sqrt(plan.dt)
