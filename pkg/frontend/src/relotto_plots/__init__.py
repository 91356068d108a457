"""Static figure rendering for relotto sweep CSVs.

Reads the delimited output of the ``relotto`` CLI and draws heatmaps and
line plots with a fixed, reproducible style. Never recomputes physics.
"""

from .jobs import (
    GridError, MissingColumnError, PlotAccessError, PlotJob, Table,
    column_floats, error_mask, load_table, require_columns,
)
from .render import render, render_heatmap, render_line

__version__ = "0.1.0"

__all__ = [
    "GridError", "MissingColumnError", "PlotAccessError", "PlotJob", "Table",
    "column_floats", "error_mask", "load_table", "require_columns",
    "render", "render_heatmap", "render_line",
]
