"""Custom exceptions for quadmartin."""

from typing import Any


class QuadMartinError(Exception):
    """Base exception for all quadmartin errors."""

    exit_code: int = 1

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        """Initialize QuadMartinError with message and optional details context."""
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(QuadMartinError):
    """Raised when configuration is invalid or missing."""

    exit_code = 2

    def __init__(self, message: str, key: str | None = None) -> None:
        """Initialize ConfigurationError with the offending key, if known."""
        self.key = key
        details: dict[str, Any] = {}
        if key:
            details["key"] = key
            message = f"{key}: {message}"
        super().__init__(f"Configuration error: {message}", details)


class NonFiniteParameterError(QuadMartinError):
    """Raised when a model parameter is NaN or infinite."""

    exit_code = 2

    def __init__(self, name: str, value: float) -> None:
        """Initialize NonFiniteParameterError with the parameter name and value."""
        self.name = name
        self.value = value
        super().__init__(
            f"Parameter {name} must be finite, got {value}",
            {"parameter": name, "value": value, "tag": "non_finite"},
        )


class ModelValidationError(QuadMartinError):
    """Raised when model parameters violate the admissibility assumptions."""

    exit_code = 2

    def __init__(self, message: str, failed_checks: list[str] | None = None) -> None:
        """Initialize ModelValidationError with the names of failed checks."""
        self.failed_checks = failed_checks or []
        details: dict[str, Any] = {}
        if self.failed_checks:
            details["failed_checks"] = self.failed_checks
        super().__init__(f"Invalid model: {message}", details)


class DomainError(QuadMartinError):
    """Raised when an argument lies outside the domain of an operation."""

    def __init__(
        self, message: str, argument: str | None = None, value: Any = None
    ) -> None:
        """Initialize DomainError with the offending argument and value."""
        self.argument = argument
        self.value = value
        details: dict[str, Any] = {}
        if argument:
            details["argument"] = argument
            details["value"] = value
        super().__init__(message, details)


class SingularityError(QuadMartinError):
    """Raised when a kernel factor vanishes or a pole is hit."""

    def __init__(
        self, message: str, factor: str | None = None, location: Any = None
    ) -> None:
        """Initialize SingularityError with the vanishing factor and its location."""
        self.factor = factor
        self.location = location
        details: dict[str, Any] = {}
        if factor:
            details["factor"] = factor
        if location is not None:
            details["location"] = location
        super().__init__(message, details)


class ConvergenceError(QuadMartinError):
    """Raised when a series or quadrature fails to converge where it must."""

    exit_code = 3

    def __init__(self, quantity: str, message: str) -> None:
        """Initialize ConvergenceError naming the quantity that failed."""
        self.quantity = quantity
        super().__init__(
            f"No convergence for {quantity}: {message}", {"quantity": quantity}
        )


class NumericalConsistencyError(QuadMartinError):
    """Raised when a numerical health check fails."""

    exit_code = 3

    def __init__(self, check: str, measured: float, bound: float) -> None:
        """Initialize NumericalConsistencyError with the failed check and values."""
        self.check = check
        self.measured = measured
        self.bound = bound
        super().__init__(
            f"Consistency check {check} failed: {measured:.3e} > {bound:.3e}",
            {"check": check, "measured": measured, "bound": bound},
        )


class OutOfScopeError(QuadMartinError):
    """Raised for quantities this library deliberately does not compute."""

    def __init__(self, quantity: str) -> None:
        """Initialize OutOfScopeError naming the unavailable quantity."""
        self.quantity = quantity
        super().__init__(
            f"{quantity} is out of scope: its value is not available in closed form",
            {"quantity": quantity},
        )


class SimulationError(QuadMartinError):
    """Raised when a Monte Carlo request is invalid or a step is infeasible."""

    def __init__(self, message: str, experiment: str | None = None) -> None:
        """Initialize SimulationError with optional experiment context."""
        self.experiment = experiment
        details: dict[str, Any] = {}
        if experiment:
            details["experiment"] = experiment
        super().__init__(f"Simulation error: {message}", details)
