"""Monte Carlo estimators built from step observers."""

import logging
import math
from collections.abc import Callable
from dataclasses import replace

import numpy as np

from quadmartin.domain.models import ArcSample, Estimate, Point
from quadmartin.infrastructure.simulation.engine import Observer, SimulationPlan, Simulator
from quadmartin.shared.exceptions import SimulationError

logger = logging.getLogger(__name__)

Box = tuple[float, float, float, float]
PointFunction = Callable[[np.ndarray], np.ndarray]

# Laplace weights below this no longer change the estimate
NEGLIGIBLE_WEIGHT = 1e-17

Weights = tuple[float, float]


def _lowest_progress(z: np.ndarray, weights: Weights) -> float:
    """Smallest ``z1 w1 + z2 w2`` over the batch; nondecreasing along every path."""
    return float(np.min(z[:, 0] * weights[0] + z[:, 1] * weights[1]))


class OccupationObserver(Observer):
    """Time spent in an axis-aligned box, with the last visit time."""

    def __init__(self, n: int, box: Box, dt: float, weights: Weights = (1.0, 1.0)) -> None:
        """Initialize for a box ``(x_lo, x_hi, y_lo, y_hi)``."""
        super().__init__(n)
        self.box = box
        self.dt = dt
        self.weights = weights
        self.total = np.zeros(n)
        self.last_visit = np.zeros(n)

    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        x_lo, x_hi, y_lo, y_hi = self.box
        inside = (z[:, 0] >= x_lo) & (z[:, 0] <= x_hi) & (z[:, 1] >= y_lo) & (z[:, 1] <= y_hi)
        self.total += self.dt * inside
        self.last_visit[inside] = (k + 1) * self.dt

    def done(self, z: np.ndarray) -> bool:
        reach = self.box[1] * self.weights[0] + self.box[3] * self.weights[1]
        return _lowest_progress(z, self.weights) > reach

    def result(self) -> np.ndarray:
        return self.total


class LocalTimeObserver(Observer):
    """Local time collected on one face while the contact point lies in an interval."""

    def __init__(
        self, n: int, axis: str, interval: tuple[float, float], weights: Weights = (1.0, 1.0)
    ) -> None:
        """Initialize for face ``y=0`` (horizontal) or ``x=0`` (vertical)."""
        super().__init__(n)
        if axis not in ("x=0", "y=0"):
            raise SimulationError(f"unknown face {axis!r}", experiment="boundary")
        self.face = 1 if axis == "y=0" else 0
        self.interval = interval
        self.weights = weights
        self.total = np.zeros(n)

    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        along = z[:, 1 - self.face]
        lo, hi = self.interval
        self.total += dL[:, self.face] * ((along >= lo) & (along <= hi))

    def done(self, z: np.ndarray) -> bool:
        # a contact point on the face has progress (position along the face) * weight
        return _lowest_progress(z, self.weights) > self.interval[1] * self.weights[1 - self.face]

    def result(self) -> np.ndarray:
        return self.total


class LaplaceObserver(Observer):
    """``int exp(x Z1 + y Z2) dt``, or ``int exp(x Z1) dL2`` / ``int exp(y Z2) dL1`` on a face."""

    def __init__(
        self,
        n: int,
        x: float,
        y: float,
        dt: float,
        face: str | None = None,
        weights: Weights = (1.0, 1.0),
    ) -> None:
        """Initialize for exponents ``(x, y)`` and an optional face integrator."""
        super().__init__(n)
        if face is None and not (x < 0 and y < 0):
            raise SimulationError("interior Laplace exponents must be negative", experiment="laplace")
        if face is not None and face not in ("x=0", "y=0"):
            raise SimulationError(f"unknown face {face!r}", experiment="laplace")
        if (face == "y=0" and x > 0) or (face == "x=0" and y > 0):
            raise SimulationError("boundary Laplace exponent must be nonpositive", experiment="laplace")
        self.x, self.y, self.dt, self.face = x, y, dt, face
        self.weights = weights
        self.total = np.zeros(n)

    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        if self.face is None:
            self.total += self.dt * np.exp(self.x * z[:, 0] + self.y * z[:, 1])
        elif self.face == "y=0":
            self.total += np.exp(self.x * z[:, 0]) * dL[:, 1]
        else:
            self.total += np.exp(self.y * z[:, 1]) * dL[:, 0]

    def done(self, z: np.ndarray) -> bool:
        # exponent per unit of progress
        per_x, per_y = self.x / self.weights[0], self.y / self.weights[1]
        if self.face is None:
            rate = max(per_x, per_y)
        else:
            rate = per_x if self.face == "y=0" else per_y
        if rate >= 0:
            return False
        return bool(math.exp(rate * _lowest_progress(z, self.weights)) < NEGLIGIBLE_WEIGHT)

    def result(self) -> np.ndarray:
        return self.total


class TerminalObserver(Observer):
    """A function of the position at the final time."""

    def __init__(self, n: int, h: PointFunction) -> None:
        """Initialize with a vectorised function of ``(n, 2)`` positions."""
        super().__init__(n)
        self.h = h
        self.z: np.ndarray | None = None

    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        self.z = z

    def result(self) -> np.ndarray:
        if self.z is None:
            raise SimulationError("no step was simulated", experiment="harmonicity")
        return np.asarray(self.h(self.z), dtype=float)


class ArcObserver(Observer):
    """First crossing of the unit circle, interpolated linearly within the step."""

    def __init__(self, n: int) -> None:
        """Initialize with no crossings."""
        super().__init__(n)
        self.points = np.full((n, 2), np.nan)
        self.hit = np.zeros(n, dtype=bool)

    def step(self, k: int, z_prev: np.ndarray, z: np.ndarray, dL: np.ndarray) -> None:
        crossing = ~self.hit & (np.einsum("ij,ij->i", z, z) >= 1.0)
        if not crossing.any():
            return
        p = z_prev[crossing]
        d = z[crossing] - p
        # |p + theta d| = 1 on [0, 1]
        qa = np.einsum("ij,ij->i", d, d)
        qb = 2 * np.einsum("ij,ij->i", p, d)
        qc = np.einsum("ij,ij->i", p, p) - 1.0
        disc = np.maximum(qb * qb - 4 * qa * qc, 0.0)
        safe = np.where(qa > 0, qa, 1.0)
        theta = np.where(qa > 0, (-qb + np.sqrt(disc)) / (2 * safe), 1.0)
        theta = np.clip(theta, 0.0, 1.0)
        self.points[crossing] = p + theta[:, None] * d
        self.hit |= crossing

    def done(self, z: np.ndarray) -> bool:
        return bool(self.hit.all())

    def result(self) -> np.ndarray:
        return self.points


def estimate_green_box(
    simulator: Simulator, z0: Point, box: Box, plan: SimulationPlan, last_visit_quantile: float = 0.99
) -> tuple[Estimate, float]:
    """Expected occupation time of a box, with a quantile of the last visit times."""
    x_lo, x_hi, y_lo, y_hi = box
    if not (0 <= x_lo < x_hi and 0 <= y_lo < y_hi):
        raise SimulationError(f"invalid box {box}", experiment="green-box")
    visits: list[np.ndarray] = []

    def make(n: int) -> Observer:
        observer = OccupationObserver(n, box, plan.dt, simulator.progress_weights)
        visits.append(observer.last_visit)
        return observer

    samples = simulator.run(z0, plan, make)
    last = float(np.quantile(np.concatenate(visits), last_visit_quantile))
    if last > 0.9 * plan.n_steps * plan.dt:
        logger.warning(f"Paths still visit the box near t_max ({last:.3g}); increase t_max")
    return Estimate.from_samples(samples), last


def estimate_boundary_density(
    simulator: Simulator, z0: Point, axis: str, interval: tuple[float, float], plan: SimulationPlan
) -> Estimate:
    """Local time collected on a face over an interval, per unit length."""
    lo, hi = interval
    if not 0 <= lo < hi:
        raise SimulationError(f"invalid interval {interval}", experiment="boundary")
    weights = simulator.progress_weights
    samples = simulator.run(z0, plan, lambda n: LocalTimeObserver(n, axis, interval, weights))
    return Estimate.from_samples(samples).scaled(1.0 / (hi - lo))


def estimate_laplace(
    simulator: Simulator, z0: Point, x: float, y: float, plan: SimulationPlan, face: str | None = None
) -> Estimate:
    """Laplace functional of the occupation measure or of a face local time."""
    weights = simulator.progress_weights
    samples = simulator.run(z0, plan, lambda n: LaplaceObserver(n, x, y, plan.dt, face, weights))
    return Estimate.from_samples(samples)


def check_harmonic(
    simulator: Simulator, h: PointFunction, z0: Point, t: float, plan: SimulationPlan
) -> Estimate:
    """``E[h(Z_t)]/h(z0)`` from paths run up to time ``t``."""
    h0 = float(np.asarray(h(np.array([z0], dtype=float)))[0])
    if h0 == 0.0 or not math.isfinite(h0):
        raise SimulationError(f"h(z0)={h0} cannot be used as a reference", experiment="harmonicity")
    timed = replace(plan, t_max=t)
    samples = simulator.run(z0, timed, lambda n: TerminalObserver(n, h))
    return Estimate.from_samples(samples / h0)


def hitting_distribution_arc(simulator: Simulator, z0: Point, plan: SimulationPlan) -> ArcSample:
    """First-crossing points of the unit arc; paths not crossing within the cap are excluded."""
    radius = math.hypot(*z0)
    if radius > 1.0:
        raise SimulationError(
            f"starting point must lie inside the unit disc, |z0|={radius}", experiment="arc"
        )
    if radius == 1.0:
        return ArcSample(points=np.tile(np.asarray(z0, dtype=float), (plan.n_paths, 1)), excluded=0)
    points = simulator.run(z0, plan, ArcObserver)
    reached = ~np.isnan(points[:, 0])
    excluded = int((~reached).sum())
    if excluded:
        logger.warning(f"{excluded} of {plan.n_paths} paths did not reach the arc and were excluded")
    return ArcSample(points=points[reached], excluded=excluded)


def arc_mean(h: PointFunction, sample: ArcSample) -> Estimate:
    """Average of ``h`` over the arc hitting sample."""
    if sample.n_hits < 2:
        raise SimulationError("fewer than two paths reached the arc", experiment="arc")
    return Estimate.from_samples(np.asarray(h(sample.points), dtype=float))
