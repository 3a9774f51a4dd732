"""
Parsers for points, boxes, intervals and grids given on the command line.

Points are ``x,y``; boxes ``x_lo,x_hi,y_lo,y_hi``; intervals ``lo,hi``;
grids either ``start:stop:num`` (inclusive, evenly spaced) or a comma list.
"""

import math
from typing import Any

import numpy as np

from .base import BaseValidator, ValidationError


class PointValidator(BaseValidator):
    """Point of the closed quadrant."""

    requirement = "a point of the closed quadrant"

    def convert(self, text: str) -> tuple[float, float]:
        x, y = self.numbers(text, 2, "point")
        return (x, y)

    def validate(self, value: Any) -> bool:
        return (
            isinstance(value, tuple)
            and len(value) == 2
            and all(math.isfinite(v) and v >= 0 for v in value)
        )


class BoxValidator(BaseValidator):
    """Axis-aligned box inside the quadrant."""

    requirement = "a box with 0 <= x_lo < x_hi and 0 <= y_lo < y_hi"

    def convert(self, text: str) -> tuple[float, float, float, float]:
        x_lo, x_hi, y_lo, y_hi = self.numbers(text, 4, "box")
        return (x_lo, x_hi, y_lo, y_hi)

    def validate(self, value: Any) -> bool:
        if not (isinstance(value, tuple) and len(value) == 4):
            return False
        x_lo, x_hi, y_lo, y_hi = value
        return 0 <= x_lo < x_hi and 0 <= y_lo < y_hi


class IntervalValidator(BaseValidator):
    """Nonnegative interval on a face."""

    requirement = "an interval with 0 <= lo < hi"

    def convert(self, text: str) -> tuple[float, float]:
        lo, hi = self.numbers(text, 2, "interval")
        return (lo, hi)

    def validate(self, value: Any) -> bool:
        return isinstance(value, tuple) and len(value) == 2 and 0 <= value[0] < value[1]


class GridValidator(BaseValidator):
    """One-dimensional grid of values, optionally restricted to a range."""

    def __init__(self, lower: float = -math.inf, upper: float = math.inf, max_points: int = 100_000) -> None:
        """Initialize with inclusive bounds."""
        self.lower = lower
        self.upper = upper
        self.max_points = max_points
        self.requirement = f"at most {max_points} grid values that must lie in [{lower}, {upper}]"

    def convert(self, text: str) -> np.ndarray:
        """Expand ``start:stop:num`` or read a comma list."""
        if ":" not in text:
            return np.array(self.numbers(text, None, "grid"))
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"grid range must be start:stop:num, got {text!r}")
        start, stop = self.numbers(f"{parts[0]},{parts[1]}", 2, "grid range")
        try:
            num = int(parts[2])
        except ValueError as e:
            raise ValidationError(f"grid point count must be an integer, got {parts[2]!r}") from e
        if num < 1:
            raise ValidationError("grid needs at least one point")
        return np.linspace(start, stop, num)

    def validate(self, value: Any) -> bool:
        """Check size and that every grid value lies within the bounds."""
        values = np.asarray(value, dtype=float)
        return (
            values.ndim == 1
            and 0 < values.size <= self.max_points
            and bool(np.all((values >= self.lower) & (values <= self.upper)))
        )
