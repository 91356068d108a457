"""The four-stroke cycle: expand the gap, kick once in the hot bath,
compress, kick twice in the cold bath.

Work is exchanged only in the two gap strokes, heat only in the two
contacts. Requiring the state to return to itself after one full cycle
fixes the starting purity r_c = B / (1 - A * hot_decay); everything else
(per-stroke ledger, extracted work, operating mode) follows from r_c.
All energies are in units of the cold gap; work output is reported
normalized by the gap difference, which caps it at 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .channel import ChannelCoeffs, KickSpec, double_kick_coeffs, single_kick_decay
from .errors import DegenerateCycle, PurityOutOfRange
from .wightman import (BathSpec, QuadratureConfig, SmearingSpec, TrajectorySpec,
                       field_variance, thermal_wightman)

__all__ = [
    "OperatingMode", "OttoConfig", "CycleLedger", "CycleResult",
    "proper_separation", "closed_cycle_purity", "cycle_ledger",
    "extracted_work_per_gap", "run_cycle",
]


class OperatingMode(enum.Enum):
    ENGINE = "ENGINE"
    REFRIGERATOR = "REFRIGERATOR"
    IDLE = "IDLE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class OttoConfig:
    """Full parameter set of one cycle. The cold gap is the unit (omega_c = 1
    unless deliberately overridden); delta_t_lab is the separation of the two
    cold kicks, read in the frame named by separation_frame."""

    omega_c: float = 1.0
    omega_h: float = 2.0
    hot_bath: BathSpec = field(default=BathSpec(temperature=1.0, v=0.0, coupling=3.0))
    cold_bath: BathSpec = field(default=BathSpec(temperature=0.01, v=0.0, coupling=3.0))
    smear: SmearingSpec = field(default=SmearingSpec(radius=1.0))
    delta_t_lab: float = 2.0
    separation_frame: str = "lab"
    quad: QuadratureConfig = field(default=QuadratureConfig())

    def __post_init__(self):
        if not 0.0 < self.omega_c < self.omega_h:
            raise ValueError(
                f"need 0 < omega_c < omega_h, got {self.omega_c}, {self.omega_h}")
        if not self.delta_t_lab > 0.0:
            raise ValueError(f"delta_t_lab must be positive, got {self.delta_t_lab}")
        if not self.hot_bath.temperature > self.cold_bath.temperature:
            raise ValueError("hot bath must be hotter than cold bath")
        if self.separation_frame not in ("lab", "proper"):
            raise ValueError(f"unknown separation frame {self.separation_frame!r}")


@dataclass(frozen=True)
class CycleLedger:
    """Signed per-stroke energies, positive = into the detector."""

    w_in: float
    q_in: float
    w_out: float
    q_out: float

    def total(self) -> float:
        return self.w_in + self.q_in + self.w_out + self.q_out


@dataclass(frozen=True)
class CycleResult:
    r_c: float
    r_h: float
    ledger: CycleLedger
    work_per_gap: float
    mode: OperatingMode
    coeffs: ChannelCoeffs


def proper_separation(delta_t_lab: float, v: float) -> float:
    """Convert a lab-frame kick separation to detector proper time,
    dtau = dt / gamma."""
    if not delta_t_lab > 0.0:
        raise ValueError(f"separation must be positive, got {delta_t_lab}")
    return delta_t_lab * TrajectorySpec(v).tau_dot


def closed_cycle_purity(coeffs: ChannelCoeffs) -> float:
    """Starting purity that survives one full cycle: r_c = B / (1 - A hd)."""
    if not 0.0 < coeffs.hot_decay <= 1.0:
        raise ValueError(f"hot_decay must lie in (0, 1], got {coeffs.hot_decay}")
    contraction = coeffs.a_coeff * coeffs.hot_decay
    if contraction >= 1.0 - 1e-14:
        raise DegenerateCycle(
            f"A * hot_decay = {contraction!r} leaves no unique closed cycle "
            "(are both couplings zero?)")
    r_c = coeffs.b_coeff / (1.0 - contraction)
    if abs(r_c) > 1.0:
        raise PurityOutOfRange(
            f"closed-cycle purity {r_c!r} outside [-1, 1]; inputs inconsistent")
    return r_c


def cycle_ledger(r_c: float, r_h: float, omega_c: float, omega_h: float) -> CycleLedger:
    """Per-stroke energy entries for the cycle r_c -> (expand) -> r_c ->
    (hot kick) -> r_h -> (compress) -> r_h -> (cold kicks) -> r_c."""
    if abs(r_c) > 1.0 or abs(r_h) > 1.0:
        raise PurityOutOfRange("purities must lie in [-1, 1]")
    gap = omega_h - omega_c
    return CycleLedger(
        w_in=0.5 * (1.0 - r_c) * gap,
        q_in=0.5 * (r_c - r_h) * omega_h,
        w_out=-0.5 * (1.0 - r_h) * gap,
        q_out=-0.5 * (r_c - r_h) * omega_c,
    )


def extracted_work_per_gap(r_c: float, hot_decay: float) -> float:
    """Net extracted work per unit gap difference,
    r_c (1 - hot_decay) / 2 = (r_c - r_h) / 2; positive means output."""
    return 0.5 * r_c * (1.0 - hot_decay)


def run_cycle(config: OttoConfig) -> CycleResult:
    """Evaluate one closed cycle end to end.

    Hot stroke: one kick, decay factor from the hot-bath variance. Cold
    stroke: two kicks at the cold gap's frequency, separated by
    delta_t_lab / gamma_c of proper time (or delta_t_lab directly in the
    proper reading). Solves the closure condition and classifies the
    operating mode.
    """
    hot_traj = TrajectorySpec(config.hot_bath.v)
    cold_traj = TrajectorySpec(config.cold_bath.v)

    hot_var = field_variance(hot_traj, config.smear, config.hot_bath, config.quad)
    hot_kick = KickSpec(coupling=config.hot_bath.coupling, tau_dot=hot_traj.tau_dot)
    hd = single_kick_decay(hot_kick, hot_var)

    if config.separation_frame == "lab":
        dtau = proper_separation(config.delta_t_lab, config.cold_bath.v)
    else:
        dtau = config.delta_t_lab
    w = thermal_wightman(cold_traj, config.smear, config.cold_bath, dtau, config.quad)
    k1 = KickSpec(coupling=config.cold_bath.coupling, tau_dot=cold_traj.tau_dot,
                  proper_time=0.0)
    k2 = KickSpec(coupling=config.cold_bath.coupling, tau_dot=cold_traj.tau_dot,
                  proper_time=dtau)
    coeffs = replace(double_kick_coeffs(k1, k2, w, omega=config.omega_c),
                     hot_decay=hd)

    r_c = closed_cycle_purity(coeffs)
    r_h = r_c * hd
    ledger = cycle_ledger(r_c, r_h, config.omega_c, config.omega_h)
    wpg = extracted_work_per_gap(r_c, hd)
    if wpg > 0.0:
        mode = OperatingMode.ENGINE
    elif wpg < 0.0 and ledger.q_out > 0.0:
        mode = OperatingMode.REFRIGERATOR
    else:
        mode = OperatingMode.IDLE
    return CycleResult(r_c=r_c, r_h=r_h, ledger=ledger, work_per_gap=wpg,
                       mode=mode, coeffs=coeffs)
