"""Exact detector-state updates for one and two instantaneous interactions.

A delta-coupled two-level detector stays diagonal in its energy basis, so a
single purity number r (the Z-Bloch component of rho = (I - r Z)/2) tracks
the full state. One kick in a thermal bath acts as a bit-flip channel and
contracts r by a decay factor; two kicks separated by proper time dtau act
as the affine map r -> A r + B, where A and B are built from the field
variance and the two-point function between the kick events.

The coefficient formulas are closed-form; ``double_kick_coeffs_oracle``
re-derives them from scratch by summing the sixteen projector terms of the
two-kick unitary with the five Gaussian-state operator expectations, and is
used in tests to pin the closed forms to ~1e-15.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import PositivityViolation, PurityOutOfRange
from .wightman import WightmanValues

__all__ = [
    "DetectorState", "KickSpec", "ChannelCoeffs", "VProductExpectations",
    "bit_flip_probability", "single_kick_decay", "v_product_expectations",
    "double_kick_coeffs", "double_kick_coeffs_oracle", "apply_affine",
]

_POSITIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class DetectorState:
    """Diagonal two-level state: purity r in [-1, 1] and energy gap omega.

    Negative r (population inversion) is allowed; the closed-cycle solution
    reaches it in the refrigerator regime.
    """

    r: float
    omega: float

    def __post_init__(self):
        if abs(self.r) > 1.0:
            raise PurityOutOfRange(f"|r| = {abs(self.r)} exceeds 1")
        if not self.omega > 0.0:
            raise ValueError(f"energy gap must be positive, got {self.omega}")


@dataclass(frozen=True)
class KickSpec:
    """One instantaneous interaction: coupling strength, dtau/dt at the kick,
    and the kick's proper time."""

    coupling: float
    tau_dot: float
    proper_time: float = 0.0

    def __post_init__(self):
        if self.coupling < 0.0:
            raise ValueError(f"coupling must be nonnegative, got {self.coupling}")
        if not 0.0 < self.tau_dot <= 1.0:
            raise ValueError(f"tau_dot must lie in (0, 1], got {self.tau_dot}")


@dataclass(frozen=True)
class ChannelCoeffs:
    """Affine map data of the double kick (r -> a_coeff r + b_coeff) plus
    the single-kick decay factor of the hot stroke.

    ``double_kick_coeffs`` cannot know the hot stroke, so hot_decay defaults
    to 1 and the cycle fills it in.
    """

    a_coeff: float
    b_coeff: float
    hot_decay: float = 1.0


@dataclass(frozen=True)
class VProductExpectations:
    """The five thermal expectations of field-rotation products.

    The conjugate pair is stored as (magnitude, phase); the phase is the
    commutator contribution +/- 4 g1 g2 Im W (g_i = lambda_i tau_dot_i). The
    remaining three are real positive.
    """

    v1_sq: float
    v1d_v2sq_v1: Tuple[float, float]
    v1_v2sq_v1d: Tuple[float, float]
    v1d_v2sq_v1d: float
    v1_v2sq_v1: float


def bit_flip_probability(kick: KickSpec, variance: float) -> float:
    """Flip probability p = (1 - e^{-2 lambda^2 tau_dot^2 V}) / 2 of the
    single-kick channel; strictly below 1/2 mathematically, saturating to
    0.5 at float precision for overwhelming kicks."""
    g2 = (kick.coupling * kick.tau_dot) ** 2
    return -0.5 * math.expm1(-2.0 * g2 * variance)


def single_kick_decay(kick: KickSpec, variance: float) -> float:
    """Purity decay factor e^{-2 lambda^2 tau_dot^2 V} of one kick, in (0, 1].

    Never exceeds 1: a single instantaneous interaction cannot purify.
    """
    g2 = (kick.coupling * kick.tau_dot) ** 2
    return math.exp(-2.0 * g2 * variance)


def v_product_expectations(k1: KickSpec, k2: KickSpec, w: WightmanValues,
                           variance1: Optional[float] = None,
                           variance2: Optional[float] = None) -> VProductExpectations:
    """Thermal expectations of the five field-rotation products.

    The optional per-kick variances keep the general (non-stationary) form
    available; by default both equal the stationary variance carried by w.
    The quadratic-form pair expands as
    <(g2 phi2 +/- g1 phi1)^2> = g2^2 V2 + g1^2 V1 +/- 2 g1 g2 Re W and the
    conjugate pair carries magnitude e^{-2 g2^2 V2} with commutator phase
    +/- 4 g1 g2 Im W.
    """
    v1 = w.variance if variance1 is None else variance1
    v2 = w.variance if variance2 is None else variance2
    g1 = k1.coupling * k1.tau_dot
    g2 = k2.coupling * k2.tau_dot
    phase = 4.0 * g1 * g2 * w.im_w
    mag = math.exp(-2.0 * g2 * g2 * v2)
    q_minus = g2 * g2 * v2 + g1 * g1 * v1 - 2.0 * g1 * g2 * w.re_w
    q_plus = g2 * g2 * v2 + g1 * g1 * v1 + 2.0 * g1 * g2 * w.re_w
    return VProductExpectations(
        v1_sq=math.exp(-2.0 * g1 * g1 * v1),
        v1d_v2sq_v1=(mag, phase),
        v1_v2sq_v1d=(mag, -phase),
        v1d_v2sq_v1d=math.exp(-2.0 * q_minus),
        v1_v2sq_v1=math.exp(-2.0 * q_plus),
    )


def _check_affine_positivity(a: float, b: float):
    worst = max(abs(a + b), abs(b - a))
    if worst > 1.0 + _POSITIVITY_SLACK:
        raise PositivityViolation(
            f"affine map (A={a!r}, B={b!r}) maps a pure state to |r'| = {worst!r} > 1; "
            "upstream field values must be inconsistent")


def double_kick_coeffs(k1: KickSpec, k2: KickSpec, w: WightmanValues,
                       omega: float) -> ChannelCoeffs:
    """Closed-form (A, B) of the two-kick affine purity map.

        A = e^{-2 g2^2 V} e^{-2 g1^2 V} [cos^2(omega dtau / 2) e^{-x}
                                         + sin^2(omega dtau / 2) e^{+x}]
        B = e^{-2 g2^2 V} sin(omega dtau) sin(4 g1 g2 Im W)

    with g_i = lambda tau_dot_i, x = 4 g1 g2 Re W, and dtau = the kicks'
    proper-time separation (which must match the separation w was computed
    at). Couplings must be equal across the two kicks.
    """
    if not omega > 0.0:
        raise ValueError(f"energy gap must be positive, got {omega}")
    if k1.coupling != k2.coupling:
        raise ValueError("the two kicks of one stroke must share a coupling")
    dtau = k2.proper_time - k1.proper_time
    if dtau <= 0.0:
        raise ValueError("kick 2 must come after kick 1")
    if abs(dtau - w.delta_tau) > 1e-12 * max(1.0, abs(dtau)):
        raise ValueError(
            f"kick separation {dtau!r} does not match the separation "
            f"{w.delta_tau!r} the field values were computed at")
    g1 = k1.coupling * k1.tau_dot
    g2 = k2.coupling * k2.tau_dot
    d1 = math.exp(-2.0 * g1 * g1 * w.variance)
    d2 = math.exp(-2.0 * g2 * g2 * w.variance)
    x = 4.0 * g1 * g2 * w.re_w
    half = 0.5 * omega * dtau
    a = d1 * d2 * (math.cos(half) ** 2 * math.exp(-x)
                   + math.sin(half) ** 2 * math.exp(x))
    b = d2 * math.sin(omega * dtau) * math.sin(4.0 * g1 * g2 * w.im_w)
    _check_affine_positivity(a, b)
    return ChannelCoeffs(a_coeff=a, b_coeff=b)


def double_kick_coeffs_oracle(k1: KickSpec, k2: KickSpec, w: WightmanValues,
                              omega: float,
                              variance1: Optional[float] = None,
                              variance2: Optional[float] = None) -> ChannelCoeffs:
    """(A, B) re-derived from the full sixteen-term projector sum.

    Expands the two kick unitaries in the projectors (I +/- mu(tau_i))/2,
    takes the Gaussian-state expectation of each ordered product of field
    rotations exp(+/- i g_i phi_i) directly from the covariance data, and
    reads A and B off the output state at r = 0 and r = 1. Shares no
    formulas with :func:`double_kick_coeffs`.
    """
    v1 = w.variance if variance1 is None else variance1
    v2 = w.variance if variance2 is None else variance2
    g = {1: k1.coupling * k1.tau_dot, 2: k2.coupling * k2.tau_dot}
    var = {1: v1, 2: v2}

    def expect(factors):
        # factors: ordered (site, coeff) pairs for a product of exp(i c phi_site)
        quad_form = 0.0
        phase = 0.0
        for j, (sj, cj) in enumerate(factors):
            for l, (sl, cl) in enumerate(factors):
                if sj == sl:
                    cov = var[sj]
                else:
                    cov = w.re_w
                quad_form += cj * cl * cov
                if l > j:
                    if (sj, sl) == (1, 2):
                        phase -= cj * cl * w.im_w
                    elif (sj, sl) == (2, 1):
                        phase += cj * cl * w.im_w
        return cmath.exp(1j * phase) * math.exp(-0.5 * quad_form)

    def mu_op(tau):
        return np.array([[0.0, cmath.exp(1j * omega * tau)],
                         [cmath.exp(-1j * omega * tau), 0.0]])

    eye = np.eye(2, dtype=complex)
    proj = {}
    for i, tau in ((1, k1.proper_time), (2, k2.proper_time)):
        m = mu_op(tau)
        proj[(i, -1)] = 0.5 * (eye - m)
        proj[(i, +1)] = 0.5 * (eye + m)

    def coeff(i, s):
        # s = -1 selects V_i = exp(+i g_i phi_i), s = +1 its adjoint
        return (i, -s * g[i])

    def r_out(r):
        rho = 0.5 * np.diag([1.0 - r, 1.0 + r]).astype(complex)
        out = np.zeros((2, 2), dtype=complex)
        for s in (-1, 1):
            for sp in (-1, 1):
                for t in (-1, 1):
                    for tp in (-1, 1):
                        site1, c1 = coeff(1, sp)
                        site2, c2 = coeff(2, tp)
                        factors = [(site1, -c1), (site2, -c2),
                                   coeff(2, t), coeff(1, s)]
                        e = expect(factors)
                        out += e * (proj[(2, t)] @ proj[(1, s)] @ rho
                                    @ proj[(1, sp)] @ proj[(2, tp)])
        if abs(np.trace(out) - 1.0) > 1e-10 or abs(out[0, 1]) > 1e-10:
            raise PositivityViolation("projector sum did not produce a "
                                      "trace-one diagonal state")
        return (out[1, 1] - out[0, 0]).real

    b = r_out(0.0)
    a = r_out(1.0) - b
    return ChannelCoeffs(a_coeff=a, b_coeff=b)


def apply_affine(state: DetectorState, coeffs: ChannelCoeffs,
                 which: str = "double") -> DetectorState:
    """Apply one stroke's channel to the detector purity.

    which = "single": r -> r * hot_decay. which = "double": r -> A r + B.
    The gap is untouched (isochoric contact).
    """
    if which == "single":
        r_new = state.r * coeffs.hot_decay
    elif which == "double":
        r_new = coeffs.a_coeff * state.r + coeffs.b_coeff
    else:
        raise ValueError(f"unknown channel kind {which!r}")
    if abs(r_new) > 1.0 + _POSITIVITY_SLACK:
        raise PositivityViolation(
            f"channel output |r'| = {abs(r_new)!r} exceeds 1")
    r_new = min(1.0, max(-1.0, r_new))
    return DetectorState(r=r_new, omega=state.omega)
