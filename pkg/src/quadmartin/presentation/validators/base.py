"""
Base parser for numeric command-line arguments.

Every argument is text such as ``3,2`` or ``0:1:5``; subclasses turn it
into a value and state the condition the value must meet.
"""

import math
from abc import ABC, abstractmethod
from typing import Any

from quadmartin.shared.exceptions import QuadMartinError


class ValidationError(QuadMartinError):
    """Raised when a command-line argument cannot be parsed or is out of range."""

    exit_code = 2


class BaseValidator(ABC):
    """Parse text into a value, then check it."""

    # human-readable condition shown when validate() fails
    requirement: str = "a valid value"

    @staticmethod
    def numbers(text: str, count: int | None, what: str) -> list[float]:
        """Finite floats separated by commas (or semicolons)."""
        parts = [part.strip() for part in text.replace(";", ",").split(",") if part.strip()]
        try:
            values = [float(part) for part in parts]
        except ValueError as e:
            raise ValidationError(f"{what} must be numbers separated by commas, got {text!r}") from e
        if count is not None and len(values) != count:
            raise ValidationError(f"{what} needs {count} numbers, got {len(values)} in {text!r}")
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(f"{what} must be finite, got {text!r}")
        return values

    @abstractmethod
    def convert(self, text: str) -> Any:
        """Turn the raw text into a value without range checks."""

    @abstractmethod
    def validate(self, value: Any) -> bool:
        """True if a converted value is acceptable."""

    def parse(self, text: str) -> Any:
        """Convert and check ``text``."""
        value = self.convert(text)
        if not self.validate(value):
            raise ValidationError(f"expected {self.requirement}, got {text!r}")
        return value

    def validate_or_raise(self, value: Any) -> None:
        """Check an already-converted value."""
        if not self.validate(value):
            raise ValidationError(f"Invalid value: {value} (expected {self.requirement})")
