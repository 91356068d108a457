"""Command-line front end.

Subcommands: ``cycle`` (one point, printed summary), ``sweep`` (grid to
CSV/JSON), ``figure 3|4|5`` (bundled preset sweeps), ``selftest``.

Exit codes: 0 success, 1 configuration errors, 2 numeric failures,
3 selftest failures.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from typing import List, Optional, Tuple

from .cycle import run_cycle
from .errors import ConfigError, RelottoError
from .sweep import default_workers, emit, parse_config, parse_config_text, sweep

_FIGURE_PRESETS = {
    ("3", "weak"): "figure3_weak.cfg",
    ("3", "medium"): "figure3_medium.cfg",
    ("3", "strong"): "figure3_strong.cfg",
    ("4", "v_c"): "figure4_cold.cfg",
    ("4", "v_h"): "figure4_hot.cfg",
    ("5", ""): "figure5.cfg",
}


def _add_common(p: argparse.ArgumentParser, with_output: bool = True):
    p.add_argument("--config", help="path to a key = value config file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a single parameter (repeatable)")
    p.add_argument("--tol", type=float, default=None,
                   help="relative tolerance for the field integrals")
    if with_output:
        p.add_argument("--out", help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers (default: OTTO_WORKERS or 1)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relotto",
        description="Delta-kicked two-level Otto cycle with moving thermal baths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cycle = sub.add_parser("cycle", help="run a single cycle and print the ledger")
    _add_common(p_cycle, with_output=False)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter grid")
    _add_common(p_sweep)

    p_fig = sub.add_parser("figure", help="run a bundled preset sweep")
    p_fig.add_argument("number", choices=("3", "4", "5"))
    _add_common(p_fig)

    sub.add_parser("selftest", help="run the built-in consistency checks")
    return parser


def _resolve_figure(number: str, sets: List[str]) -> Tuple[str, str, List[str]]:
    """Split preset-selector pseudo-keys out of --set and pick the preset file."""
    passthrough: List[str] = []
    preset = None
    scan = None
    for item in sets:
        key, _, val = item.partition("=")
        key = key.strip()
        if key == "coupling_preset":
            preset = val.strip()
        elif key == "scan":
            scan = val.strip()
        else:
            passthrough.append(item)
    if preset is not None and number != "3":
        raise ConfigError("coupling_preset applies to figure 3 only")
    if scan is not None and number != "4":
        raise ConfigError("scan applies to figure 4 only")
    if number == "3":
        variant = preset or "medium"
        if ("3", variant) not in _FIGURE_PRESETS:
            raise ConfigError(f"unknown coupling_preset {variant!r} "
                              "(choose weak, medium, or strong)")
    elif number == "4":
        variant = scan or "v_c"
        if ("4", variant) not in _FIGURE_PRESETS:
            raise ConfigError(f"unknown scan {variant!r} (choose v_c or v_h)")
    else:
        variant = ""
    return _FIGURE_PRESETS[(number, variant)], variant, passthrough


def _default_out(number: str, variant: str, fmt: str) -> str:
    ext = "csv" if fmt == "csv" else "json"
    tag = f"_{variant}" if variant else ""
    return f"figure{number}{tag}.{ext}"


def _cmd_cycle(args) -> int:
    spec = parse_config(args.config, args.set, rel_tol=args.tol)
    if spec.axes:
        raise ConfigError("cycle evaluates a single point; "
                          f"remove the range on {spec.axes[0].name!r}")
    res = run_cycle(spec.base)
    led = res.ledger
    print(f"r_c          = {res.r_c:.12g}")
    print(f"r_h          = {res.r_h:.12g}")
    print(f"work_per_gap = {res.work_per_gap:.12g}")
    print(f"w_in,  q_in  = {led.w_in:.12g}, {led.q_in:.12g}")
    print(f"w_out, q_out = {led.w_out:.12g}, {led.q_out:.12g}")
    print(f"mode         = {res.mode}")
    return 0


def _cmd_sweep(args) -> int:
    spec = parse_config(args.config, args.set, rel_tol=args.tol)
    workers = args.workers if args.workers else default_workers()
    rows = sweep(spec, workers=workers)
    out = args.out or ("sweep.csv" if args.format == "csv" else "sweep.json")
    emit(rows, format=args.format, path=out)
    errors = sum(1 for r in rows if r.error_flag)
    note = f" ({errors} error rows)" if errors else ""
    print(f"wrote {len(rows)} rows to {out}{note}")
    return 0


def _cmd_figure(args) -> int:
    preset_file, variant, sets = _resolve_figure(args.number, args.set)
    text = resources.files("relotto.presets").joinpath(preset_file).read_text()
    spec = parse_config_text(text, sets, rel_tol=args.tol, source=preset_file)
    workers = args.workers if args.workers else default_workers()
    rows = sweep(spec, workers=workers)
    out = args.out or _default_out(args.number, variant, args.format)
    emit(rows, format=args.format, path=out)
    errors = sum(1 for r in rows if r.error_flag)
    note = f" ({errors} error rows)" if errors else ""
    print(f"wrote {len(rows)} rows to {out}{note}")
    return 0


def _cmd_selftest(_args) -> int:
    from .selftest import run_selftest
    failures = run_selftest()
    return 3 if failures else 0


_HANDLERS = {
    "cycle": _cmd_cycle,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "selftest": _cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except RelottoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
