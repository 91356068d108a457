"""Fixed plot styling, shared by every renderer.

All style decisions live here so that rendering the same CSV twice yields
byte-identical image files: one backend, one rcParams block, one colormap,
and savefig metadata pinned to constants (no timestamps).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib import colormaps

#: Upper end of the shared heatmap color scale. Work per unit gap never
#: reaches this in practice, so every preset renders on the same scale.
VALUE_CAP = 0.5

#: Lower end of the shared color scale; negative cells fall through to the
#: under-color and get the refrigerator overlay.
VALUE_FLOOR = 0.0

COLORMAP = "viridis"
MASKED_COLOR = "0.85"
REFRIGERATOR_COLOR = "#b3443c"
REFRIGERATOR_HATCH = "////"
LINE_COLOR = "#275c8e"
ZERO_LINE_COLOR = "0.4"
SHADE_ALPHA = 0.35

_RC = {
    "figure.figsize": (5.0, 3.8),
    "figure.dpi": 110,
    "savefig.dpi": 150,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.labelsize": 10,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.4,
    "axes.linewidth": 0.8,
    "svg.hashsalt": "relotto-plots",
}


def apply_style() -> None:
    """Install the fixed rcParams. Safe to call more than once."""
    plt.rcParams.update(_RC)


def value_colormap():
    """Colormap for heatmaps with masked and under-range colors baked in."""
    cmap = colormaps[COLORMAP].copy()
    cmap.set_bad(MASKED_COLOR)
    cmap.set_under(REFRIGERATOR_COLOR)
    return cmap


def save_deterministic(fig, path: str) -> None:
    """Write ``fig`` to ``path`` with all volatile metadata pinned.

    PNG carries only a fixed Software tag; SVG and PDF drop their creation
    dates. Anything else falls back to plain savefig.
    """
    suffix = str(path).rsplit(".", 1)[-1].lower() if "." in str(path) else ""
    if suffix == "png":
        fig.savefig(path, metadata={"Software": "relotto-plots"})
    elif suffix == "svg":
        fig.savefig(path, metadata={"Date": None})
    elif suffix == "pdf":
        fig.savefig(path, metadata={"CreationDate": None})
    else:
        fig.savefig(path)
