"""Tests for CSV/JSON result tables."""

import json
import math
from pathlib import Path

import pytest

from quadmartin.presentation.formatters.export import OutputTable, format_cell, parse_cell

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("value", "text"),
    [
        (True, "true"),
        (3, "3"),
        (0.1, "0.10000000000000001"),
        (math.inf, "inf"),
        (-math.inf, "-inf"),
        ("P1", "P1"),
    ],
)
def test_format_cell(value: object, text: str) -> None:
    assert format_cell(value) == text  # type: ignore[arg-type]


def test_nan_cell() -> None:
    assert format_cell(math.nan) == "nan"
    assert math.isnan(parse_cell("nan"))  # type: ignore[arg-type]


@pytest.mark.parametrize("value", [0.1, 1 / 3, 1e-300, 123456789.123456789, -2.5e17])
def test_floats_survive_csv(value: float) -> None:
    assert parse_cell(format_cell(value)) == value


def test_parse_cell_types() -> None:
    assert parse_cell("false") is False
    assert parse_cell("7") == 7 and isinstance(parse_cell("7"), int)
    assert parse_cell("interior") == "interior"


class TestOutputTable:
    def make(self) -> OutputTable:
        table = OutputTable(
            header=["alpha", "case", "value", "converged"], metadata={"z0": (1.0, 1.0), "seed": 3}
        )
        table.add_row(0.5, "interior", 1.25, True)
        table.add_row(1.0, "drift_constant", 1.0, False)
        return table

    def test_csv_layout(self) -> None:
        lines = self.make().to_csv().splitlines()
        assert lines[0] == "# z0=[1.0, 1.0]"
        assert lines[1] == "# seed=3"
        assert lines[2] == "alpha,case,value,converged"
        assert lines[3] == "0.5,interior,1.25,true"

    def test_csv_parses_back(self) -> None:
        table = self.make()
        parsed = OutputTable.from_csv(table.to_csv())
        assert parsed.header == table.header
        assert parsed.rows == table.rows
        assert parsed.metadata == {"z0": [1.0, 1.0], "seed": 3}

    def test_json(self) -> None:
        data = json.loads(self.make().render("json"))
        assert data["header"][0] == "alpha"
        assert data["rows"][1][1] == "drift_constant"
        assert data["metadata"]["z0"] == [1.0, 1.0]

    def test_column(self) -> None:
        assert self.make().column("case") == ["interior", "drift_constant"]

    def test_write(self, tmp_path: Path) -> None:
        path = tmp_path / "out.csv"
        self.make().write("csv", path)
        assert OutputTable.from_csv(path.read_text()).rows[0][0] == 0.5

    def test_ragged_row(self) -> None:
        with pytest.raises(ValueError, match="expected 4"):
            self.make().add_row(1.0)

    @pytest.mark.parametrize("header", [[], ["a", "a"]])
    def test_bad_header(self, header: list[str]) -> None:
        with pytest.raises(ValueError):
            OutputTable(header=header)

    def test_empty_csv(self) -> None:
        with pytest.raises(ValueError, match="no header"):
            OutputTable.from_csv("# seed=1\n")
