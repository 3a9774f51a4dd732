"""Points on the kernel parabola and critical data."""

from dataclasses import dataclass


@dataclass(frozen=True)
class SPoint:
    """Point of the zero set of the kernel, indexed by its parameter ``s``."""

    s: float
    x: float
    y: float


@dataclass(frozen=True)
class LadderPoint:
    """Exponent ``(a_m, b_m)`` of the compensation ladder.

    Complex when the ladder is started from a complex base point.
    """

    m: int
    a: complex | float
    b: complex | float

    @property
    def ab(self) -> tuple[complex | float, complex | float]:
        """Exponent as a tuple."""
        return (self.a, self.b)


@dataclass(frozen=True)
class CriticalData:
    """Critical parameters, pole flags and critical angles of a normalized model."""

    s_star: float
    s_star2: float
    x_star: float
    y_star: float
    x_star2: float
    y_star2: float
    alpha_star: float
    alpha_star2: float
    pole_phi2: bool
    pole_phi1: bool
    double_root_phi2: bool
    double_root_phi1: bool
    x_max: float
    y_max: float
    alpha_mu: float

    def __post_init__(self) -> None:
        """Validate ordering of the critical quantities."""
        if not self.s_star2 < 0 < self.s_star:
            raise ValueError("Critical parameters must straddle zero")
        if not 0.0 <= self.alpha_star < self.alpha_mu < self.alpha_star2:
            raise ValueError("Critical angles must bracket the drift angle")
        if self.pole_phi2 and self.double_root_phi2:
            raise ValueError("A pole and a double root cannot coexist")
        if self.pole_phi1 and self.double_root_phi1:
            raise ValueError("A pole and a double root cannot coexist")

    def clamp(self, alpha: float) -> float:
        """Clamp an angle to ``[alpha_star, alpha_star2]``."""
        return min(max(alpha, self.alpha_star), self.alpha_star2)

    def rows(self) -> list[tuple[str, float | bool]]:
        """Name/value pairs in display order."""
        return [
            ("s_star", self.s_star),
            ("s_star2", self.s_star2),
            ("x_star", self.x_star),
            ("y_star", self.y_star),
            ("x_star2", self.x_star2),
            ("y_star2", self.y_star2),
            ("alpha_star", self.alpha_star),
            ("alpha_star2", self.alpha_star2),
            ("alpha_mu", self.alpha_mu),
            ("pole_phi2", self.pole_phi2),
            ("pole_phi1", self.pole_phi1),
            ("double_root_phi2", self.double_root_phi2),
            ("double_root_phi1", self.double_root_phi1),
            ("x_max", self.x_max),
            ("y_max", self.y_max),
        ]
