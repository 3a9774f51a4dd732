"""Batched Euler simulation of the reflected process with counter-based random streams."""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from quadmartin.domain.models import ModelParams, NormalizedModel, PathSample, Point
from quadmartin.infrastructure.simulation.skorokhod import reflect
from quadmartin.shared.config import MonteCarloConfig
from quadmartin.shared.exceptions import SimulationError

logger = logging.getLogger(__name__)


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for stream ``index`` of ``seed``.

    Streams are indexed by batch, so ``batch_size`` is part of what a seed reproduces.
    """
    if seed < 0 or index < 0:
        raise SimulationError("seed and stream index must be nonnegative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


class Observer(ABC):
    """Per-batch accumulator fed with every Euler step."""

    def __init__(self, n: int) -> None:
        """Initialize for a batch of ``n`` paths."""
        self.n = n

    def start(self, z: np.ndarray) -> None:  # noqa: B027
        """Receive the starting positions."""

    @abstractmethod
    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        """Receive step ``k`` (ending at time ``(k + 1) dt``)."""

    def done(self, z: np.ndarray) -> bool:
        """True when no later step can change the result."""
        return False

    @abstractmethod
    def result(self) -> np.ndarray:
        """Per-path samples of the batch."""


@dataclass(frozen=True)
class SimulationPlan:
    """Resolved Monte Carlo settings."""

    n_paths: int
    dt: float
    t_max: float
    seed: int
    batch_size: int = 1024
    antithetic: bool = False
    threads: int = 1
    max_steps: int = 2_000_000
    noise: bool = True

    def __post_init__(self) -> None:
        """Validate plan."""
        if self.n_paths < 2:
            raise SimulationError(f"at least two paths are required, got {self.n_paths}")
        if not (self.dt > 0 and self.t_max >= self.dt):
            raise SimulationError(f"need 0 < dt <= t_max, got dt={self.dt}, t_max={self.t_max}")
        if self.batch_size < 1 or self.threads < 1:
            raise SimulationError("batch size and thread count must be positive")

    @classmethod
    def from_config(cls, config: MonteCarloConfig, **overrides: object) -> "SimulationPlan":
        """Build from the configuration section; the seed must be set."""
        values = config.model_dump()
        values.update({key: value for key, value in overrides.items() if value is not None})
        if values.get("seed") is None:
            raise SimulationError("a seed is required for Monte Carlo experiments")
        return cls(**values)

    @property
    def n_steps(self) -> int:
        """Euler steps up to ``t_max``."""
        return min(math.ceil(self.t_max / self.dt - 1e-9), self.max_steps)

    @property
    def batches(self) -> list[tuple[int, int]]:
        """``(stream index, batch size)`` of each batch, in order."""
        full, rest = divmod(self.n_paths, self.batch_size)
        sizes = [self.batch_size] * full + ([rest] if rest else [])
        return list(enumerate(sizes))


class Simulator:
    """Euler scheme with exact per-step reflection.

    Accepts a normalized model or general admissible parameters; the free
    motion is ``z0 + v B_t + mu t`` with ``v = (sigma1, -sigma2)``.
    """

    def __init__(self, model: NormalizedModel | ModelParams) -> None:
        """Initialize simulator."""
        params = model.as_params() if isinstance(model, NormalizedModel) else model
        params.checks().raise_if_failed()
        self.model = params
        self.drift = np.array([params.mu1, params.mu2])
        self.noise_direction = np.array([params.sigma1, -params.sigma2])

    @property
    def progress_weights(self) -> tuple[float, float]:
        """Weights ``w`` with ``w . v = 0``: ``w . Z`` is nondecreasing along every path."""
        return (1.0 / self.model.sigma1, 1.0 / self.model.sigma2)

    def _noise(self, rng: np.random.Generator, n: int, dt: float, plan: SimulationPlan) -> np.ndarray:
        if not plan.noise:
            return np.zeros(n)
        if plan.antithetic:
            half = rng.standard_normal(n // 2)
            return math.sqrt(dt) * np.concatenate((half, -half, rng.standard_normal(n % 2)))
        return math.sqrt(dt) * rng.standard_normal(n)

    def run_batch(
        self, z0: Point, plan: SimulationPlan, index: int, n: int, observer: Observer
    ) -> np.ndarray:
        """Advance one batch until ``t_max`` or until the observer is done."""
        rng = stream(plan.seed, index)
        z = np.tile(np.asarray(z0, dtype=float), (n, 1))
        observer.start(z)
        step_drift = self.drift * plan.dt
        k = 0
        for k in range(plan.n_steps):
            dB = self._noise(rng, n, plan.dt, plan)
            w = z + np.outer(dB, self.noise_direction) + step_drift
            z_new, dL = reflect(w, self.model.r1, self.model.r2)
            observer.step(k, z, z_new, dL)
            z = z_new
            if observer.done(z):
                break
        logger.debug(f"Batch {index}: {n} paths stopped after {k + 1} steps")
        return observer.result()

    def run(
        self, z0: Point, plan: SimulationPlan, make_observer: Callable[[int], Observer]
    ) -> np.ndarray:
        """Per-path samples over all batches, concatenated in batch order."""
        if z0[0] < 0 or z0[1] < 0:
            raise SimulationError(f"starting point must lie in the quadrant, got {z0}")
        batches = plan.batches
        logger.info(
            f"Simulating {plan.n_paths} paths in {len(batches)} batch(es), "
            f"dt={plan.dt:g}, up to {plan.n_steps} steps, {plan.threads} thread(s)"
        )

        def job(batch: tuple[int, int]) -> np.ndarray:
            index, n = batch
            return self.run_batch(z0, plan, index, n, make_observer(n))

        if plan.threads == 1:
            parts = [job(batch) for batch in batches]
        else:
            with ThreadPoolExecutor(max_workers=plan.threads) as pool:
                parts = list(pool.map(job, batches))
        return np.concatenate(parts)

    def simulate_path(
        self, z0: Point, t_max: float, dt: float, stream_id: int, seed: int, noise: bool = True
    ) -> PathSample:
        """Full trajectory of a single path with cumulative local times."""
        if z0[0] < 0 or z0[1] < 0:
            raise SimulationError(f"starting point must lie in the quadrant, got {z0}")
        plan = SimulationPlan(n_paths=2, dt=dt, t_max=t_max, seed=seed, noise=noise)
        rng = stream(seed, stream_id)
        n_steps = plan.n_steps
        dB = math.sqrt(dt) * rng.standard_normal(n_steps) if noise else np.zeros(n_steps)
        positions = np.empty((n_steps + 1, 2))
        dL = np.zeros((n_steps + 1, 2))
        positions[0] = z0
        step_drift = self.drift * dt
        for k in range(n_steps):
            w = positions[k] + dB[k] * self.noise_direction + step_drift
            z_new, step_dL = reflect(w[None, :], self.model.r1, self.model.r2)
            positions[k + 1] = z_new[0]
            dL[k + 1] = step_dL[0]
        local = np.cumsum(dL, axis=0)
        return PathSample(
            dt=dt,
            positions=positions,
            L1=local[:, 0],
            L2=local[:, 1],
            increments=dB,
        )
