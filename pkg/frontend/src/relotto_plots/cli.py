"""Command line entry: plot-figure --csv <path> --kind <heatmap|line> --out <path>."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .jobs import PlotAccessError, PlotJob, load_table
from .render import render

_DEFAULTS = {
    "heatmap": {"x": "v_c", "y": "v_h", "value": "work_per_gap"},
    "line": {"x": "", "y": "", "value": "work_per_gap"},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot-figure",
        description="Render a sweep CSV to a static image.")
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--kind", required=True, choices=("heatmap", "line"))
    parser.add_argument("--out", required=True,
                        help="output image path (.png, .svg, or .pdf)")
    parser.add_argument("--x", default=None, metavar="COLUMN",
                        help="x-axis column (heatmap default v_c; line default:"
                             " first CSV column)")
    parser.add_argument("--y", default=None, metavar="COLUMN",
                        help="second grid axis for heatmaps (default v_h)")
    parser.add_argument("--value", default=None, metavar="COLUMN",
                        help="plotted quantity (default work_per_gap)")
    return parser


def _format_report(report: dict) -> str:
    lo, hi = report["value_min"], report["value_max"]
    span = f"value range [{lo:.6g}, {hi:.6g}]"
    if report["kind"] == "heatmap":
        ny, nx = report["grid_shape"]
        return (f"wrote {report['output_path']}: {ny}x{nx} grid, "
                f"{report['masked_cells']} cells masked "
                f"({report['flagged_rows']} flagged rows), "
                f"{report['refrigerator_cells']} refrigerator cells, {span}")
    return (f"wrote {report['output_path']}: {report['points']} points "
            f"({report['dropped_rows']} dropped), "
            f"{report['refrigerator_points']} in refrigerator window, {span}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    defaults = _DEFAULTS[args.kind]
    try:
        x_column = args.x or defaults["x"]
        if not x_column:
            x_column = load_table(args.csv).columns[0]
        job = PlotJob(
            csv_path=args.csv,
            plot_kind=args.kind,
            x_column=x_column,
            y_column=args.y or defaults["y"],
            value_column=args.value or defaults["value"],
            output_path=args.out,
        )
        report = render(job)
    except PlotAccessError as exc:
        print(f"plot-figure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"plot-figure: {exc}", file=sys.stderr)
        return 1
    print(_format_report(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
