"""Process parameter domain models."""

import math
from dataclasses import dataclass, field

from quadmartin.shared.exceptions import (
    DomainError,
    ModelValidationError,
    NonFiniteParameterError,
)

Point = tuple[float, float]


@dataclass(frozen=True)
class ModelParams:
    """Covariance scales, drift and reflection ratios of the process.

    The covariance matrix is the rank-one ``v vᵀ`` with ``v = (sigma1, -sigma2)``
    and the reflection matrix is ``R = [[1, r2], [r1, 1]]``. Only finiteness is
    enforced here; admissibility is reported by :meth:`checks`.
    """

    sigma1: float
    sigma2: float
    mu1: float
    mu2: float
    r1: float
    r2: float

    def __post_init__(self) -> None:
        """Reject non-finite parameters."""
        for name in ("sigma1", "sigma2", "mu1", "mu2", "r1", "r2"):
            value = getattr(self, name)
            if not isinstance(value, int | float) or not math.isfinite(value):
                raise NonFiniteParameterError(name, value)

    def checks(self) -> "ValidationReport":
        """Evaluate every admissibility condition."""
        sigmas_ok = self.sigma1 > 0 and self.sigma2 > 0
        return ValidationReport(
            checks=(
                ValidationCheck(
                    "sigma_positive",
                    sigmas_ok,
                    f"sigma1={self.sigma1}, sigma2={self.sigma2}",
                ),
                ValidationCheck(
                    "drift_positive",
                    self.mu1 > 0 and self.mu2 > 0,
                    f"mu1={self.mu1}, mu2={self.mu2}",
                ),
                ValidationCheck(
                    "reflection_r1",
                    sigmas_ok and self.r1 > -self.sigma2 / self.sigma1,
                    f"r1={self.r1} must exceed -sigma2/sigma1",
                ),
                ValidationCheck(
                    "reflection_r2",
                    sigmas_ok and self.r2 > -self.sigma1 / self.sigma2,
                    f"r2={self.r2} must exceed -sigma1/sigma2",
                ),
                ValidationCheck(
                    "existence",
                    abs(self.r1 * self.r2) < 1,
                    f"|r1*r2|={abs(self.r1 * self.r2)} must be below 1",
                ),
            )
        )

    @property
    def is_normalized(self) -> bool:
        """Check for unit scales and drift summing to one."""
        return (
            self.sigma1 == 1.0 and self.sigma2 == 1.0 and self.mu1 + self.mu2 == 1.0
        )


@dataclass(frozen=True)
class ValidationCheck:
    """Outcome of a single admissibility condition."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Named pass/fail checks for a parameter set."""

    checks: tuple[ValidationCheck, ...]

    @property
    def passed(self) -> bool:
        """True when every check passes."""
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> list[str]:
        """Names of the failed checks."""
        return [check.name for check in self.checks if not check.passed]

    def raise_if_failed(self) -> None:
        """Raise ModelValidationError naming every failed check."""
        if not self.passed:
            raise ModelValidationError(
                "failed checks: " + ", ".join(self.failed), failed_checks=self.failed
            )


@dataclass(frozen=True)
class NormalizedModel:
    """Model with unit scales and ``mu1 + mu2 = 1``.

    ``mu2`` is derived as ``1 - mu1`` so the constraint holds exactly in
    floating point.
    """

    mu1: float
    r1: float
    r2: float
    mu2: float = field(init=False)

    def __post_init__(self) -> None:
        """Derive mu2 and validate the normalized assumptions."""
        object.__setattr__(self, "mu2", 1.0 - self.mu1)
        report = self.as_params().checks()
        report.raise_if_failed()

    @classmethod
    def from_drift(cls, mu1: float, mu2: float, r1: float, r2: float) -> "NormalizedModel":
        """Build from both drift components, rejecting a sum other than one."""
        if not math.isclose(mu1 + mu2, 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise ModelValidationError(
                f"drift components sum to {mu1 + mu2}, expected 1",
                failed_checks=["drift_sum"],
            )
        return cls(mu1=mu1, r1=r1, r2=r2)

    def as_params(self) -> ModelParams:
        """View as general parameters with unit scales."""
        return ModelParams(1.0, 1.0, self.mu1, self.mu2, self.r1, self.r2)

    @property
    def mu(self) -> Point:
        """Drift vector."""
        return (self.mu1, self.mu2)


@dataclass(frozen=True)
class SpaceTimeMap:
    """Dilation taking a general model to its normalized form.

    Space is scaled by ``psi(z) = (scale_x * z1, scale_y * z2)`` and time by
    ``time_factor``: the normalized process at time ``time_factor * t`` is
    ``psi`` of the original process at time ``t``.
    """

    sigma1: float
    sigma2: float
    lam: float
    scale_x: float = field(init=False)
    scale_y: float = field(init=False)
    time_factor: float = field(init=False)

    def __post_init__(self) -> None:
        """Derive the scale factors."""
        if not (self.sigma1 > 0 and self.sigma2 > 0 and self.lam > 0):
            raise ValueError("Scales must be positive")
        object.__setattr__(self, "scale_x", self.lam / self.sigma1)
        object.__setattr__(self, "scale_y", self.lam / self.sigma2)
        object.__setattr__(self, "time_factor", self.lam**2)

    @classmethod
    def identity(cls) -> "SpaceTimeMap":
        """The map of an already-normalized model."""
        return cls(1.0, 1.0, 1.0)

    @property
    def jacobian(self) -> float:
        """Determinant of the spatial map."""
        return self.scale_x * self.scale_y

    def apply(self, z: Point) -> Point:
        """Map a point of the closed quadrant into normalized coordinates."""
        x, y = z
        if x < 0 or y < 0:
            raise DomainError("point must lie in the closed quadrant", "z", z)
        return (self.scale_x * x, self.scale_y * y)

    def invert(self, z: Point) -> Point:
        """Map a normalized point back to original coordinates."""
        x, y = z
        if x < 0 or y < 0:
            raise DomainError("point must lie in the closed quadrant", "z", z)
        return (x / self.scale_x, y / self.scale_y)

    def angle(self, alpha: float) -> float:
        """Normalized angle ``arctan((sigma2/sigma1) tan(alpha))``; endpoints fixed."""
        if not 0.0 <= alpha <= math.pi / 2:
            raise DomainError("angle must lie in [0, pi/2]", "alpha", alpha)
        if alpha == 0.0 or alpha == math.pi / 2:
            return alpha
        return math.atan2(self.sigma2 * math.sin(alpha), self.sigma1 * math.cos(alpha))

    def direction(self, alpha: float) -> tuple[float, float]:
        """Angle and length of the image of the unit vector ``e_alpha``.

        Used to pull back radial asymptotics: ``r e_alpha`` maps to
        ``(length * r) e_angle``.
        """
        if not 0.0 <= alpha <= math.pi / 2:
            raise DomainError("angle must lie in [0, pi/2]", "alpha", alpha)
        u = self.scale_x * math.cos(alpha)
        v = self.scale_y * math.sin(alpha)
        if alpha == 0.0:
            return 0.0, self.scale_x
        if alpha == math.pi / 2:
            return alpha, self.scale_y
        return math.atan2(v, u), math.hypot(u, v)
