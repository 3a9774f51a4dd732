"""
CSV and JSON export of command results.

Numbers are written with 17 significant digits so that every emitted CSV
parses back to the same floats. Run metadata is carried as leading
``# key=value`` lines.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

Cell = float | int | bool | str

_METADATA_PREFIX = "# "


def format_cell(value: Cell) -> str:
    """Canonical text of a cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def parse_cell(text: str) -> Cell:
    """Inverse of :func:`format_cell` (integers, floats, booleans, else text)."""
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _plain(value: Any) -> Any:
    """Metadata value usable by both JSON and ``key=value`` lines."""
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return list(value)
    return value


@dataclass
class OutputTable:
    """Rectangular result table with the run parameters that produced it."""

    header: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate table shape."""
        if not self.header:
            raise ValueError("Table needs at least one column")
        if len(set(self.header)) != len(self.header):
            raise ValueError("Column names must be unique")
        for row in self.rows:
            self._check_row(row)

    def _check_row(self, row: list[Cell]) -> None:
        if len(row) != len(self.header):
            raise ValueError(f"Row has {len(row)} cells, expected {len(self.header)}")

    def add_row(self, *cells: Cell) -> None:
        """Append a row."""
        row = list(cells)
        self._check_row(row)
        self.rows.append(row)

    def column(self, name: str) -> list[Cell]:
        """Values of one column."""
        index = self.header.index(name)
        return [row[index] for row in self.rows]

    def to_csv(self) -> str:
        """CSV text with metadata comment lines first."""
        buffer = io.StringIO()
        for key, value in self.metadata.items():
            buffer.write(f"{_METADATA_PREFIX}{key}={json.dumps(_plain(value))}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_cell(cell) for cell in row])
        return buffer.getvalue()

    def to_json(self) -> str:
        """JSON object with ``metadata``, ``header`` and ``rows``."""
        return json.dumps(
            {
                "metadata": {key: _plain(value) for key, value in self.metadata.items()},
                "header": self.header,
                "rows": self.rows,
            },
            indent=2,
        )

    @classmethod
    def from_csv(cls, text: str) -> "OutputTable":
        """Parse text produced by :meth:`to_csv`."""
        metadata: dict[str, Any] = {}
        body: list[str] = []
        for line in text.splitlines():
            if line.startswith(_METADATA_PREFIX) and not body:
                key, _, raw = line[len(_METADATA_PREFIX) :].partition("=")
                try:
                    metadata[key] = json.loads(raw)
                except json.JSONDecodeError:
                    metadata[key] = raw
            elif line:
                body.append(line)
        records = list(csv.reader(body))
        if not records:
            raise ValueError("CSV has no header")
        header, *rows = records
        parsed = [[parse_cell(cell) for cell in row] for row in rows]
        return cls(header=header, rows=parsed, metadata=metadata)

    def render(self, output_format: str) -> str:
        """Text in ``csv`` or ``json`` format."""
        if output_format == "json":
            return self.to_json() + "\n"
        return self.to_csv()

    def write(self, output_format: str, path: Path) -> None:
        """Write the table to a file."""
        path.write_text(self.render(output_format))
