"""Plot job description and CSV loading.

The plotters are read-only consumers of sweep CSVs. They parse the header
and cells as written, never recompute any physics, and treat a non-empty
``error_flag`` cell as a hole in the data.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

__all__ = [
    "PlotAccessError", "MissingColumnError", "GridError",
    "PlotJob", "Table", "load_table", "require_columns",
    "column_floats", "error_mask",
]

PLOT_KINDS = ("heatmap", "line")

#: Sweep column naming: error descriptions live here, operating mode here.
ERROR_COLUMN = "error_flag"
MODE_COLUMN = "mode"
REFRIGERATOR_MODE = "REFRIGERATOR"


class PlotAccessError(Exception):
    """Base for everything the CLI reports as a usage problem."""


class MissingColumnError(PlotAccessError):
    """A referenced column is absent from the CSV header."""


class GridError(PlotAccessError):
    """Rows do not form a usable grid (duplicate or empty coordinates)."""


@dataclass(frozen=True)
class PlotJob:
    """One rendering request.

    ``value_column`` is the displayed quantity for both kinds: the cell
    color of a heatmap, the ordinate of a line plot. ``y_column`` names the
    second grid axis and is only consulted for heatmaps.
    """

    csv_path: str
    plot_kind: str
    x_column: str
    y_column: str
    value_column: str
    output_path: str

    def __post_init__(self) -> None:
        if self.plot_kind not in PLOT_KINDS:
            raise PlotAccessError(
                f"unknown plot kind {self.plot_kind!r}; expected one of {PLOT_KINDS}")

    def referenced_columns(self) -> Tuple[str, ...]:
        if self.plot_kind == "heatmap":
            return (self.x_column, self.y_column, self.value_column)
        return (self.x_column, self.value_column)


@dataclass(frozen=True)
class Table:
    columns: Tuple[str, ...]
    rows: Tuple[Dict[str, str], ...]

    def __len__(self) -> int:
        return len(self.rows)


def load_table(path: str) -> Table:
    """Read a sweep CSV into memory, cells kept as strings."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise PlotAccessError(f"{path}: empty file, no CSV header")
            columns = tuple(reader.fieldnames)
            rows = tuple(dict(row) for row in reader)
    except OSError as exc:
        raise PlotAccessError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not rows:
        raise PlotAccessError(f"{path}: header only, nothing to plot")
    return Table(columns=columns, rows=rows)


def require_columns(table: Table, job: PlotJob) -> None:
    """Raise MissingColumnError naming every referenced column that is absent."""
    missing = [c for c in job.referenced_columns() if c not in table.columns]
    if missing:
        have = ", ".join(table.columns)
        raise MissingColumnError(
            f"{job.csv_path}: missing column(s) {', '.join(sorted(set(missing)))}"
            f" (file has: {have})")


def column_floats(table: Table, name: str) -> List[float]:
    """Parse one column as floats; blank cells become NaN."""
    out: List[float] = []
    for i, row in enumerate(table.rows, start=2):
        cell = row.get(name, "").strip()
        if not cell:
            out.append(math.nan)
            continue
        try:
            out.append(float(cell))
        except ValueError as exc:
            raise PlotAccessError(
                f"line {i}: column {name!r} holds non-numeric {cell!r}") from exc
    return out


def error_mask(table: Table) -> List[bool]:
    """True where the row carries a non-empty error flag.

    CSVs without an ``error_flag`` column are treated as all-good.
    """
    if ERROR_COLUMN not in table.columns:
        return [False] * len(table.rows)
    return [bool(row.get(ERROR_COLUMN, "").strip()) for row in table.rows]
