"""Configuration parsing, grid sweeps, and delimited output.

Config files are flat ``key = value`` text. A value is either a number or a
``lo:hi:count`` range; each range turns its key into a sweep axis (at most
two), ordered by appearance, iterated row-major with the first axis
outermost. Inline overrides use the same syntax and are applied after the
file.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cycle import OttoConfig, run_cycle
from .errors import ConfigError, RangeError, RelottoError
from .wightman import V_MAX, BathSpec, QuadratureConfig, SmearingSpec

__all__ = [
    "PARAM_KEYS", "AxisSpec", "SweepSpec", "ResultRow",
    "parse_config", "parse_config_text", "sweep", "emit",
]

#: Keys that may carry a range and become sweep axes.
PARAM_KEYS = ("v_h", "v_c", "lambda_c", "lambda_h", "delta_t", "T_c", "T_h", "R")

#: Scalar-only keys accepted in addition to the sweepable ones.
_SCALAR_KEYS = ("omega_h", "separation_frame")

_RESULT_COLUMNS = ("r_c", "r_h", "work_per_gap",
                   "w_in", "q_in", "w_out", "q_out", "mode", "error_flag")

_DEFAULTS: Dict[str, Union[float, str]] = {
    "v_h": 0.0, "v_c": 0.0,
    "lambda_c": 3.0, "lambda_h": 3.0,
    "delta_t": 2.0, "T_c": 0.01, "T_h": 1.0, "R": 1.0,
    "omega_h": 2.0, "separation_frame": "lab",
}


@dataclass(frozen=True)
class AxisSpec:
    name: str
    lo: float
    hi: float
    count: int

    def values(self) -> Tuple[float, ...]:
        return tuple(float(x) for x in np.linspace(self.lo, self.hi, self.count))


@dataclass(frozen=True)
class SweepSpec:
    """Up to two axes plus the fixed configuration for everything else.

    Swept keys hold their axis lower bound inside ``base``; per-point values
    replace them during the sweep.
    """

    axes: Tuple[AxisSpec, ...]
    base: OttoConfig

    @property
    def size(self) -> int:
        n = 1
        for ax in self.axes:
            n *= ax.count
        return n

    def grid(self) -> List[Dict[str, float]]:
        """Per-point override dicts in row-major order (first axis outermost)."""
        if not self.axes:
            return [{}]
        if len(self.axes) == 1:
            ax = self.axes[0]
            return [{ax.name: x} for x in ax.values()]
        a1, a2 = self.axes
        return [{a1.name: x1, a2.name: x2}
                for x1 in a1.values() for x2 in a2.values()]


@dataclass
class ResultRow:
    """One grid point: every input parameter plus the cycle outputs.

    ``error_flag`` is the empty string on success; when set, all numeric
    outputs are None and ``mode`` is empty.
    """

    params: Dict[str, Union[float, str]]
    swept: Tuple[str, ...]
    r_c: Optional[float] = None
    r_h: Optional[float] = None
    work_per_gap: Optional[float] = None
    w_in: Optional[float] = None
    q_in: Optional[float] = None
    w_out: Optional[float] = None
    q_out: Optional[float] = None
    mode: str = ""
    error_flag: str = ""


# ---------------------------------------------------------------------------
# parsing

def _parse_value(key: str, raw: str, where: str):
    raw = raw.strip()
    if key == "separation_frame":
        if raw not in ("lab", "proper"):
            raise RangeError(f"{where}: separation_frame must be lab or proper, got {raw!r}")
        return raw
    if ":" in raw:
        if key not in PARAM_KEYS:
            raise ConfigError(f"{where}: key {key!r} cannot be swept")
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{where}: range must be lo:hi:count, got {raw!r}")
        try:
            lo, hi = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise ConfigError(f"{where}: malformed range {raw!r}") from None
        if count < 1:
            raise ConfigError(f"{where}: range count must be >= 1, got {count}")
        if hi < lo:
            raise ConfigError(f"{where}: range must be nondecreasing, got {raw!r}")
        for endpoint in (lo, hi):
            _validate_domain(key, endpoint, where)
        return AxisSpec(name=key, lo=lo, hi=hi, count=count)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{where}: expected a number for {key!r}, got {raw!r}") from None
    _validate_domain(key, value, where)
    return value


def _validate_domain(key: str, value: float, where: str):
    if not math.isfinite(value):
        raise RangeError(f"{where}: {key} = {value} is not finite")
    if key in ("v_h", "v_c") and not 0.0 <= value <= V_MAX:
        raise RangeError(f"{where}: {key} = {value} outside [0, {V_MAX}]")
    if key in ("lambda_c", "lambda_h") and value < 0.0:
        raise RangeError(f"{where}: {key} must be nonnegative")
    if key == "T_c" and value < 0.0:
        raise RangeError(f"{where}: T_c must be nonnegative")
    if key == "T_h" and value <= 0.0:
        raise RangeError(f"{where}: T_h must be positive")
    if key in ("delta_t", "R") and value <= 0.0:
        raise RangeError(f"{where}: {key} must be positive")
    if key == "omega_h" and value <= 1.0:
        raise RangeError(f"{where}: omega_h must exceed the cold gap (1)")


def _config_from_values(values: Dict[str, Union[float, str]],
                        rel_tol: Optional[float]) -> OttoConfig:
    quad = QuadratureConfig() if rel_tol is None else QuadratureConfig(rel_tol=rel_tol)
    try:
        return OttoConfig(
            omega_c=1.0,
            omega_h=float(values["omega_h"]),
            hot_bath=BathSpec(temperature=float(values["T_h"]),
                              v=float(values["v_h"]),
                              coupling=float(values["lambda_h"])),
            cold_bath=BathSpec(temperature=float(values["T_c"]),
                               v=float(values["v_c"]),
                               coupling=float(values["lambda_c"])),
            smear=SmearingSpec(radius=float(values["R"])),
            delta_t_lab=float(values["delta_t"]),
            separation_frame=str(values["separation_frame"]),
            quad=quad,
        )
    except RelottoError:
        raise
    except ValueError as exc:
        raise RangeError(str(exc)) from None


def parse_config_text(text: str, overrides: Sequence[str] = (),
                      rel_tol: Optional[float] = None,
                      source: str = "<config>") -> SweepSpec:
    """Parse config text plus ``key=value`` override strings into a SweepSpec."""
    assigned: Dict[str, Union[float, str, AxisSpec]] = {}
    order: List[str] = []

    def assign(key, parsed):
        if key in assigned:
            order.remove(key)
        assigned[key] = parsed
        order.append(key)

    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        where = f"{source}:{lineno}"
        key, sep, raw = body.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{where}: expected key = value, got {line.strip()!r}")
        if key not in PARAM_KEYS and key not in _SCALAR_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        assign(key, _parse_value(key, raw, where))

    for i, item in enumerate(overrides, start=1):
        where = f"override {i} ({item!r})"
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{where}: expected key=value")
        if key not in PARAM_KEYS and key not in _SCALAR_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        assign(key, _parse_value(key, raw, where))

    axes = tuple(assigned[k] for k in order if isinstance(assigned[k], AxisSpec))
    if len(axes) > 2:
        raise ConfigError(f"at most two sweep axes supported, got "
                          f"{[ax.name for ax in axes]}")

    values = dict(_DEFAULTS)
    for key, parsed in assigned.items():
        values[key] = parsed.lo if isinstance(parsed, AxisSpec) else parsed
    base = _config_from_values(values, rel_tol)
    return SweepSpec(axes=axes, base=base)


def parse_config(path: Optional[str] = None, overrides: Sequence[str] = (),
                 rel_tol: Optional[float] = None) -> SweepSpec:
    """Parse a config file (all defaults when path is None) plus overrides."""
    if path is None:
        return parse_config_text("", overrides, rel_tol)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    return parse_config_text(text, overrides, rel_tol, source=str(path))


# ---------------------------------------------------------------------------
# sweep execution

def _flat_params(config: OttoConfig) -> Dict[str, Union[float, str]]:
    return {
        "v_h": config.hot_bath.v, "v_c": config.cold_bath.v,
        "lambda_c": config.cold_bath.coupling, "lambda_h": config.hot_bath.coupling,
        "delta_t": config.delta_t_lab, "T_c": config.cold_bath.temperature,
        "T_h": config.hot_bath.temperature, "R": config.smear.radius,
        "omega_h": config.omega_h, "separation_frame": config.separation_frame,
    }


def _point_config(base: OttoConfig, updates: Dict[str, float]) -> OttoConfig:
    hot = base.hot_bath
    cold = base.cold_bath
    smear = base.smear
    kwargs = {}
    for key, val in updates.items():
        if key == "v_h":
            hot = replace(hot, v=val)
        elif key == "lambda_h":
            hot = replace(hot, coupling=val)
        elif key == "T_h":
            hot = replace(hot, temperature=val)
        elif key == "v_c":
            cold = replace(cold, v=val)
        elif key == "lambda_c":
            cold = replace(cold, coupling=val)
        elif key == "T_c":
            cold = replace(cold, temperature=val)
        elif key == "R":
            smear = SmearingSpec(radius=val)
        elif key == "delta_t":
            kwargs["delta_t_lab"] = val
        else:
            raise ConfigError(f"unexpected sweep key {key!r}")
    return replace(base, hot_bath=hot, cold_bath=cold, smear=smear, **kwargs)


def _eval_point(task) -> ResultRow:
    base, swept, updates = task
    try:
        config = _point_config(base, updates)
        params = _flat_params(config)
    except Exception as exc:
        params = dict(_flat_params(base))
        params.update(updates)
        return ResultRow(params=params, swept=swept,
                         error_flag=type(exc).__name__)
    try:
        res = run_cycle(config)
    except Exception as exc:
        return ResultRow(params=params, swept=swept,
                         error_flag=type(exc).__name__)
    return ResultRow(
        params=params, swept=swept,
        r_c=res.r_c, r_h=res.r_h, work_per_gap=res.work_per_gap,
        w_in=res.ledger.w_in, q_in=res.ledger.q_in,
        w_out=res.ledger.w_out, q_out=res.ledger.q_out,
        mode=str(res.mode),
    )


def sweep(spec: SweepSpec, workers: int = 1) -> List[ResultRow]:
    """Evaluate every grid point; one row each, in row-major order.

    Per-point failures land in ``error_flag`` and never abort the sweep.
    The row order (and therefore the emitted bytes) is independent of the
    worker count.
    """
    swept = tuple(ax.name for ax in spec.axes)
    tasks = [(spec.base, swept, updates) for updates in spec.grid()]
    if workers <= 1 or len(tasks) <= 1:
        return [_eval_point(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_point, tasks, chunksize=chunk))


def default_workers() -> int:
    """Worker count from the OTTO_WORKERS environment variable, default 1."""
    raw = os.environ.get("OTTO_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# output

def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".12g")


def emit(rows: Sequence[ResultRow], format: str = "csv",
         path: str = "sweep.csv") -> str:
    """Write rows to ``path`` as CSV or JSON.

    CSV columns: the swept parameter names in axis order, then the fixed
    result columns. Numbers carry 12 significant digits; error rows leave
    their numeric cells empty. Every line is newline-terminated.
    """
    if not rows:
        raise ValueError("refusing to emit an empty sweep")
    swept = list(rows[0].swept)
    columns = swept + list(_RESULT_COLUMNS)

    def cells(row: ResultRow):
        out = [_fmt(float(row.params[name])) for name in swept]
        for col in _RESULT_COLUMNS[:-2]:
            out.append(_fmt(getattr(row, col)))
        out.append(row.mode)
        out.append(row.error_flag)
        return out

    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(cells(row)) + "\n")
    elif format == "json":
        payload = []
        for row in rows:
            obj = {}
            for name, cell in zip(columns, cells(row)):
                if name in ("mode", "error_flag"):
                    obj[name] = cell
                else:
                    obj[name] = float(cell) if cell else None
            payload.append(obj)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        raise ConfigError(f"unknown output format {format!r}")
    return path
