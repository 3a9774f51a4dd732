"""Tests for command-line input parsers."""

import math

import numpy as np
import pytest

from quadmartin.presentation.validators import (
    BoxValidator,
    GridValidator,
    IntervalValidator,
    PointValidator,
    ValidationError,
)

pytestmark = pytest.mark.unit


class TestPoint:
    def test_parse(self) -> None:
        assert PointValidator().parse("3, 2") == (3.0, 2.0)

    @pytest.mark.parametrize("text", ["3", "1,2,3", "a,b", "-1,2", "inf,1"])
    def test_rejects(self, text: str) -> None:
        with pytest.raises(ValidationError):
            PointValidator().parse(text)

    def test_validate_or_raise(self) -> None:
        with pytest.raises(ValidationError, match="Invalid value"):
            PointValidator().validate_or_raise((1.0, -1.0))


class TestBoxAndInterval:
    def test_box(self) -> None:
        assert BoxValidator().parse("2.75,3.25,1.75,2.25") == (2.75, 3.25, 1.75, 2.25)

    def test_empty_box(self) -> None:
        with pytest.raises(ValidationError, match="x_lo < x_hi"):
            BoxValidator().parse("3,2,0,1")

    def test_interval(self) -> None:
        assert IntervalValidator().parse("1;2") == (1.0, 2.0)

    def test_reversed_interval(self) -> None:
        with pytest.raises(ValidationError):
            IntervalValidator().parse("2,1")


class TestGrid:
    def test_range(self) -> None:
        np.testing.assert_allclose(GridValidator().parse("0:1:5"), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_list(self) -> None:
        np.testing.assert_array_equal(GridValidator().parse("0.1, 0.5,0.2"), [0.1, 0.5, 0.2])

    def test_bounds(self) -> None:
        validator = GridValidator(0.0, math.pi / 2)
        assert validator.parse("0,1.5").size == 2
        with pytest.raises(ValidationError, match="must lie in"):
            validator.parse("0,2")

    @pytest.mark.parametrize("text", ["0:1", "0:1:x", "0:1:0", ""])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ValidationError):
            GridValidator().parse(text)

    def test_point_limit(self) -> None:
        with pytest.raises(ValidationError):
            GridValidator(max_points=3).parse("0:1:4")


def test_validation_error_exit_code() -> None:
    assert ValidationError("bad").exit_code == 2
