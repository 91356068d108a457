"""Render sweep CSVs to image files.

Two renderers, one per plot kind. Both take a :class:`~relotto_plots.jobs.PlotJob`,
write ``job.output_path``, and return a small report dict (row counts, masked
cells, value range) that the CLI echoes to stdout.
"""

from __future__ import annotations

import math
from typing import Dict, List

import numpy as np
import matplotlib.pyplot as plt
from matplotlib.patches import Patch, Rectangle

from .jobs import (
    GridError, MODE_COLUMN, PlotJob, REFRIGERATOR_MODE, PlotAccessError,
    Table, column_floats, error_mask, load_table, require_columns,
)
from . import style

__all__ = ["render", "render_heatmap", "render_line"]


def _axis_label(column: str) -> str:
    if column.startswith("v_"):
        return f"{column} (units of c)"
    return column


def _edges(centers: List[float]) -> np.ndarray:
    """Cell boundaries around sorted center coordinates."""
    c = np.asarray(centers, dtype=float)
    if c.size == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mid = 0.5 * (c[:-1] + c[1:])
    first = c[0] - (mid[0] - c[0])
    last = c[-1] + (c[-1] - mid[-1])
    return np.concatenate([[first], mid, [last]])


def _finite_range(grid: np.ndarray):
    vals = grid[np.isfinite(grid)]
    if vals.size == 0:
        return math.nan, math.nan
    return float(vals.min()), float(vals.max())


def _mode_flags(table: Table) -> List[bool]:
    if MODE_COLUMN not in table.columns:
        return [False] * len(table.rows)
    return [row.get(MODE_COLUMN, "").strip() == REFRIGERATOR_MODE
            for row in table.rows]


def render_heatmap(job: PlotJob) -> Dict[str, object]:
    """Draw ``value_column`` over the (x, y) grid spanned by the CSV rows.

    Cells whose row carries an error flag (or no row at all) are masked in a
    flat gray; refrigerator-mode cells get a hatched overlay and, for
    negative values, the dedicated under-range color. The color scale is
    fixed to [VALUE_FLOOR, VALUE_CAP] so different runs share one scale.
    """
    table = load_table(job.csv_path)
    require_columns(table, job)

    xs = column_floats(table, job.x_column)
    ys = column_floats(table, job.y_column)
    vals = column_floats(table, job.value_column)
    flagged = error_mask(table)
    fridge = _mode_flags(table)

    for i, (x, y) in enumerate(zip(xs, ys), start=2):
        if math.isnan(x) or math.isnan(y):
            raise GridError(f"line {i}: empty grid coordinate")

    ux = sorted(set(xs))
    uy = sorted(set(ys))
    ix = {v: k for k, v in enumerate(ux)}
    iy = {v: k for k, v in enumerate(uy)}

    grid = np.full((len(uy), len(ux)), math.nan)
    fridge_grid = np.zeros_like(grid, dtype=bool)
    seen = np.zeros_like(grid, dtype=bool)
    flagged_rows = 0
    for x, y, val, bad, cold in zip(xs, ys, vals, flagged, fridge):
        i, j = iy[y], ix[x]
        if seen[i, j]:
            raise GridError(
                f"duplicate grid cell at {job.x_column}={x:g}, {job.y_column}={y:g}")
        seen[i, j] = True
        if bad:
            flagged_rows += 1
            continue
        grid[i, j] = val
        fridge_grid[i, j] = cold

    vmin, vmax = _finite_range(grid)
    masked_cells = int(np.count_nonzero(~np.isfinite(grid)))

    style.apply_style()
    fig, ax = plt.subplots()
    xe, ye = _edges(ux), _edges(uy)
    mesh = ax.pcolormesh(
        xe, ye, np.ma.masked_invalid(grid), cmap=style.value_colormap(),
        vmin=style.VALUE_FLOOR, vmax=style.VALUE_CAP)

    for i in range(len(uy)):
        for j in range(len(ux)):
            if fridge_grid[i, j]:
                ax.add_patch(Rectangle(
                    (xe[j], ye[i]), xe[j + 1] - xe[j], ye[i + 1] - ye[i],
                    fill=False, hatch=style.REFRIGERATOR_HATCH,
                    edgecolor="white", linewidth=0.0))

    extend = "min" if (not math.isnan(vmin) and vmin < style.VALUE_FLOOR) else "neither"
    cbar = fig.colorbar(mesh, ax=ax, extend=extend)
    if not math.isnan(vmax):
        cbar.ax.axhline(vmax, color=style.REFRIGERATOR_COLOR, linewidth=1.2)
        cbar.set_label(f"{job.value_column} (max {vmax:.4g})")
    else:
        cbar.set_label(job.value_column)

    ax.set_xlabel(_axis_label(job.x_column))
    ax.set_ylabel(_axis_label(job.y_column))
    title = job.value_column
    if masked_cells:
        title += f" ({masked_cells} masked)"
    ax.set_title(title)
    if fridge_grid.any():
        ax.legend(handles=[Patch(
            facecolor=style.REFRIGERATOR_COLOR, hatch=style.REFRIGERATOR_HATCH,
            edgecolor="white", label="refrigerator")], loc="upper right")

    style.save_deterministic(fig, job.output_path)
    plt.close(fig)

    return {
        "kind": "heatmap",
        "rows": len(table),
        "grid_shape": (len(uy), len(ux)),
        "flagged_rows": flagged_rows,
        "masked_cells": masked_cells,
        "refrigerator_cells": int(fridge_grid.sum()),
        "value_min": vmin,
        "value_max": vmax,
        "output_path": str(job.output_path),
    }


def render_line(job: PlotJob) -> Dict[str, object]:
    """Draw ``value_column`` against ``x_column`` in CSV row order.

    A zero line is always drawn; wherever the curve dips below it, the
    region down to zero is shaded and labeled as the refrigerator window.
    Rows with an error flag or empty cells are dropped and counted.
    """
    table = load_table(job.csv_path)
    require_columns(table, job)

    xs_all = column_floats(table, job.x_column)
    ys_all = column_floats(table, job.value_column)
    flagged = error_mask(table)

    xs: List[float] = []
    ys: List[float] = []
    for x, y, bad in zip(xs_all, ys_all, flagged):
        if bad or math.isnan(x) or math.isnan(y):
            continue
        xs.append(x)
        ys.append(y)
    dropped = len(table) - len(xs)
    if not xs:
        raise PlotAccessError(
            f"{job.csv_path}: every row is flagged or empty, nothing to plot")

    x_arr = np.asarray(xs)
    y_arr = np.asarray(ys)
    below = y_arr < 0.0

    style.apply_style()
    fig, ax = plt.subplots()
    ax.axhline(0.0, color=style.ZERO_LINE_COLOR, linewidth=0.8)
    ax.plot(x_arr, y_arr, color=style.LINE_COLOR)
    if below.any():
        ax.fill_between(
            x_arr, y_arr, 0.0, where=below, interpolate=True,
            color=style.REFRIGERATOR_COLOR, alpha=style.SHADE_ALPHA,
            linewidth=0, label="refrigerator")
        ax.legend(loc="best")

    ax.set_xlabel(_axis_label(job.x_column))
    ax.set_ylabel(job.value_column)

    style.save_deterministic(fig, job.output_path)
    plt.close(fig)

    return {
        "kind": "line",
        "rows": len(table),
        "points": len(xs),
        "dropped_rows": dropped,
        "refrigerator_points": int(below.sum()),
        "value_min": float(y_arr.min()),
        "value_max": float(y_arr.max()),
        "output_path": str(job.output_path),
    }


def render(job: PlotJob) -> Dict[str, object]:
    if job.plot_kind == "heatmap":
        return render_heatmap(job)
    return render_line(job)
