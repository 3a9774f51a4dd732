"""Validators for command-line arguments."""

from .base import BaseValidator, ValidationError
from .inputs import BoxValidator, GridValidator, IntervalValidator, PointValidator

__all__ = [
    "BaseValidator",
    "BoxValidator",
    "GridValidator",
    "IntervalValidator",
    "PointValidator",
    "ValidationError",
]
