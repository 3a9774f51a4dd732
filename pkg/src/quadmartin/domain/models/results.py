"""Result models for series, harmonic functions, asymptotics and estimates."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from quadmartin.shared.exceptions import OutOfScopeError


@dataclass(frozen=True)
class SeriesSettings:
    """Truncation settings of a compensation series."""

    tol: float = 1e-12
    n_max: int = 10000
    abs_floor: float = 1e-300

    def __post_init__(self) -> None:
        """Validate truncation settings."""
        if not self.tol > 0:
            raise ValueError("Series tolerance must be positive")
        if self.n_max < 10:
            raise ValueError("n_max must be at least 10")
        if not self.abs_floor > 0:
            raise ValueError("abs_floor must be positive")


@dataclass(frozen=True)
class SeriesValue:
    """Truncated series value with its tail bound."""

    value: complex
    n_terms: int
    tail_bound: float
    converged: bool

    def __post_init__(self) -> None:
        """Validate series bookkeeping."""
        if self.n_terms < 0:
            raise ValueError("Term count cannot be negative")
        if self.tail_bound < 0:
            raise ValueError("Tail bound cannot be negative")

    @property
    def real(self) -> float:
        """Real part of the value."""
        return self.value.real

    def __add__(self, other: "SeriesValue") -> "SeriesValue":
        """Combine two independently truncated sums."""
        return SeriesValue(
            value=self.value + other.value,
            n_terms=self.n_terms + other.n_terms,
            tail_bound=self.tail_bound + other.tail_bound,
            converged=self.converged and other.converged,
        )


class HarmonicCase(str, Enum):
    """Construction used for a Martin harmonic function."""

    INTERIOR = "interior"
    STAR_POLE = "star_pole"
    STAR_DERIVATIVE = "star_derivative"
    STAR_DOUBLE = "star_double"
    STAR2_POLE = "star2_pole"
    STAR2_DERIVATIVE = "star2_derivative"
    STAR2_DOUBLE = "star2_double"
    DRIFT_CONSTANT = "drift_constant"


class HarmonicEval(BaseModel):
    """Value of a Martin harmonic function at one point."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., ge=0.0, le=math.pi / 2, description="Direction angle")
    z0: tuple[float, float] = Field(..., description="Evaluation point")
    value: float = Field(..., allow_inf_nan=False, description="h_alpha(z0)")
    case_tag: HarmonicCase = Field(..., description="Construction used")
    n_terms: int = Field(0, ge=0, description="Series terms summed")
    tail_bound: float = Field(0.0, ge=0.0, description="Truncation tail bound")
    converged: bool = Field(True, description="Truncation rule satisfied")


class Regime(str, Enum):
    """Directional regime of the Green density asymptotics."""

    INTERIOR = "interior"
    FROZEN_LOW = "frozen_low"
    FROZEN_HIGH = "frozen_high"
    AT_STAR_POLE = "at_star_pole"
    AT_STAR2_POLE = "at_star2_pole"
    BOUNDARY0_NOPOLE = "boundary0_nopole"
    BOUNDARY0_DOUBLE = "boundary0_double"
    BOUNDARY_PI2_NOPOLE = "boundary_pi2_nopole"
    BOUNDARY_PI2_DOUBLE = "boundary_pi2_double"


class SubRegime(BaseModel):
    """Transitional behaviour near a pole direction."""

    model_config = ConfigDict(frozen=True)

    name: str
    condition: str
    constant: float | None = None

    @property
    def available(self) -> bool:
        """Whether the constant is computed by this library."""
        return self.constant is not None


class AsymptoticResult(BaseModel):
    """Leading behaviour ``g(r e_alpha) ~ (C r^p + C2 r^p2) exp(-rho r)``."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., ge=0.0, le=math.pi / 2)
    regime: Regime
    decay_rate: float = Field(..., ge=-1e-12, description="Exponential rate rho")
    power: float = Field(..., description="Exponent of r in the leading prefactor")
    constant: float = Field(..., allow_inf_nan=False)
    secondary_power: float | None = None
    secondary_constant: float | None = Field(None, allow_inf_nan=False)
    sub_regimes: tuple[SubRegime, ...] = ()

    def value_at(self, r: float) -> float:
        """Evaluate the asymptotic form at radius ``r``."""
        prefactor = self.constant * r**self.power
        if self.secondary_power is not None and self.secondary_constant is not None:
            prefactor += self.secondary_constant * r**self.secondary_power
        return prefactor * math.exp(-self.decay_rate * r)

    def sub_regime_constant(self, name: str) -> float:
        """Constant of a named transitional sub-regime."""
        for sub in self.sub_regimes:
            if sub.name == name:
                if sub.constant is None:
                    raise OutOfScopeError(f"constant of sub-regime '{name}'")
                return sub.constant
        raise KeyError(name)


class QuadratureSpec(BaseModel):
    """Contour and tolerance settings for inverting the Green density."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(..., gt=0.0, description="Contour abscissa is -epsilon")
    v_max: float | None = Field(
        None, gt=0.0, description="Truncation of the vertical line; automatic if unset"
    )
    rel_tol: float = Field(1e-8, gt=0.0)
    abs_tol: float = Field(1e-11, gt=0.0)
    max_subdiv: int = Field(200, ge=1)
    mu_min: float = Field(..., gt=0.0, le=0.5, description="min(mu1, mu2)")

    @model_validator(mode="after")
    def _check_epsilon(self) -> "QuadratureSpec":
        if not self.epsilon < self.mu_min / 2:
            raise ValueError(
                f"epsilon={self.epsilon} must be below min(mu1, mu2)/2={self.mu_min / 2}"
            )
        return self

    @classmethod
    def default_for(cls, mu1: float, mu2: float, **overrides: float | int | None) -> "QuadratureSpec":
        """Quadrature settings with ``epsilon = min(mu1, mu2)/4`` unless overridden."""
        mu_min = min(mu1, mu2)
        values = {key: value for key, value in overrides.items() if value is not None}
        values.setdefault("epsilon", mu_min / 4)
        return cls(mu_min=mu_min, **values)

    def with_epsilon(self, epsilon: float) -> "QuadratureSpec":
        """Copy with another contour abscissa."""
        return self.model_copy(update={"epsilon": epsilon})


class Estimate(BaseModel):
    """Monte Carlo sample mean with its standard error."""

    model_config = ConfigDict(frozen=True)

    mean: float = Field(..., allow_inf_nan=False)
    std_error: float = Field(..., ge=0.0)
    n: int = Field(..., ge=2)

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "Estimate":
        """Mean and ``std(ddof=1)/sqrt(n)`` of per-path samples."""
        samples = np.asarray(samples, dtype=float)
        n = samples.size
        if n < 2:
            raise ValueError("At least two samples are required")
        return cls(
            mean=float(np.mean(samples)),
            std_error=float(np.std(samples, ddof=1) / math.sqrt(n)),
            n=n,
        )

    def scaled(self, factor: float) -> "Estimate":
        """Estimate of ``factor`` times the quantity."""
        return Estimate(
            mean=self.mean * factor, std_error=self.std_error * abs(factor), n=self.n
        )

    def agrees_with(
        self, value: float, n_se: float = 3.0, rel_allowance: float = 0.0, abs_allowance: float = 0.0
    ) -> bool:
        """``|mean - value| <= n_se*SE + rel_allowance*|value| + abs_allowance``."""
        bound = n_se * self.std_error + rel_allowance * abs(value) + abs_allowance
        return abs(self.mean - value) <= bound


@dataclass(frozen=True)
class PathSample:
    """Single simulated trajectory with cumulative local times."""

    dt: float
    positions: np.ndarray
    L1: np.ndarray
    L2: np.ndarray
    increments: np.ndarray

    def __post_init__(self) -> None:
        """Validate array shapes."""
        if self.dt <= 0:
            raise ValueError("Time step must be positive")
        n = self.positions.shape[0]
        if self.positions.shape != (n, 2):
            raise ValueError("Positions must be an (n, 2) array")
        if self.L1.shape != (n,) or self.L2.shape != (n,):
            raise ValueError("Local times must align with positions")

    @property
    def n_steps(self) -> int:
        """Number of Euler steps."""
        return self.positions.shape[0] - 1

    @property
    def times(self) -> np.ndarray:
        """Time grid."""
        return self.dt * np.arange(self.positions.shape[0])


@dataclass(frozen=True)
class ArcSample:
    """First-crossing points of the unit arc with the excluded path count."""

    points: np.ndarray
    excluded: int

    @property
    def n_hits(self) -> int:
        """Number of paths that reached the arc."""
        return int(self.points.shape[0])
