"""Quick built-in consistency checks, printable from the CLI.

Each check cross-validates one layer against an independent route: the
complex error function against its series oracle, the closed-form thermal
integrals against direct 2D quadrature, the kick-channel coefficients
against the projector assembly, and the assembled cycle against its own
ledger identities. Runs in a few seconds.
"""

from __future__ import annotations

import math

import numpy as np

from .channel import (ChannelCoeffs, DetectorState, KickSpec, apply_affine,
                      bit_flip_probability, double_kick_coeffs,
                      double_kick_coeffs_oracle)
from .cycle import OttoConfig, run_cycle
from .specfun import erf_complex, erf_series_oracle
from .wightman import (BathSpec, SmearingSpec, TrajectorySpec, WightmanValues,
                       thermal_wightman, wightman_oracle_2d)


def _check_erf_vs_series():
    rng = np.random.default_rng(20260815)
    worst = 0.0
    for _ in range(60):
        x = rng.uniform(-3.5, 3.5)
        y = rng.uniform(-3.5, 3.5)
        got = erf_complex(x, y)
        ref = erf_series_oracle(x, y)
        worst = max(worst, abs(got - ref) / max(abs(ref), 1e-300))
    assert worst < 1e-12, f"worst relative error {worst:.3e}"


def _check_erf_symmetries():
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.uniform(-4, 4)
        y = rng.uniform(-4, 4)
        f = erf_complex(x, y)
        assert erf_complex(-x, -y) == -f
        assert erf_complex(x, -y) == f.conjugate()


def _compare_to_oracle(v, radius, temp, dtau, tol):
    traj = TrajectorySpec(v=v)
    smear = SmearingSpec(radius=radius)
    bath = BathSpec(temperature=temp, v=v, coupling=1.0)
    got = thermal_wightman(traj, smear, bath, dtau)
    ref_w = wightman_oracle_2d(traj, smear, dtau, bath)
    ref_var = wightman_oracle_2d(traj, smear, 0.0, bath).real
    pairs = [("variance", got.variance, ref_var),
             ("re_w", got.re_w, ref_w.real),
             ("im_w", got.im_w, ref_w.imag)]
    for name, g, r in pairs:
        scale = max(abs(r), 1e-9 * ref_var)
        assert abs(g - r) / scale < tol, (
            f"{name} mismatch at v={v}, R={radius}, T={temp}, "
            f"dtau={dtau}: {g!r} vs {r!r}")


def _check_thermal_vs_oracle():
    for v, radius, temp, dtau in [(0.5, 1.0, 1.0, 1.0),
                                  (0.9, 0.7, 0.01, 2.0),
                                  (1e-4, 1.0, 1.0, 1.0)]:
        _compare_to_oracle(v, radius, temp, dtau, 1e-6)


def _check_branch_seam():
    for dtau in (0.0, 1.0, 2.5):
        _compare_to_oracle(1e-3, 1.0, 1.0, dtau, 1e-8)


def _check_commutator_state_independence():
    traj = TrajectorySpec(v=0.4)
    smear = SmearingSpec(radius=1.2)
    dtau = 1.7
    cold = wightman_oracle_2d(traj, smear, dtau, BathSpec(0.01, 0.4, 1.0))
    hot = wightman_oracle_2d(traj, smear, dtau, BathSpec(2.0, 0.4, 1.0))
    scale = max(abs(cold.imag), abs(hot.imag), 1e-9 * hot.real)
    assert abs(cold.imag - hot.imag) / scale < 1e-9


def _random_wightman(rng) -> WightmanValues:
    variance = rng.uniform(0.02, 0.4)
    # keep |W| strictly inside the Cauchy-Schwarz disc
    mag = variance * rng.uniform(0.0, 0.95)
    phase = rng.uniform(0, 2 * math.pi)
    return WightmanValues(variance=variance,
                          re_w=mag * math.cos(phase),
                          im_w=mag * math.sin(phase),
                          delta_tau=1.0)


def _check_channel_vs_assembly():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        w = _random_wightman(rng)
        lam = rng.uniform(0.05, 3.0)
        td1 = rng.uniform(0.15, 1.0)
        td2 = rng.uniform(0.15, 1.0)
        omega = rng.uniform(0.2, 4.0)
        k1 = KickSpec(coupling=lam, tau_dot=td1, proper_time=0.0)
        k2 = KickSpec(coupling=lam, tau_dot=td2, proper_time=w.delta_tau)
        got = double_kick_coeffs(k1, k2, w, omega)
        ref = double_kick_coeffs_oracle(k1, k2, w, omega)
        worst = max(worst,
                    abs(got.a_coeff - ref.a_coeff) / max(abs(ref.a_coeff), 1e-12),
                    abs(got.b_coeff - ref.b_coeff))
    assert worst < 1e-12, f"worst deviation {worst:.3e}"


def _check_single_kick_contracts():
    rng = np.random.default_rng(123)
    for _ in range(500):
        kick = KickSpec(coupling=rng.uniform(0, 5),
                        tau_dot=rng.uniform(0.15, 1.0))
        variance = rng.uniform(0.001, 0.5)
        p = bit_flip_probability(kick, variance)
        assert 0.0 <= p <= 0.5
        state = DetectorState(r=rng.uniform(-1, 1), omega=1.0)
        coeffs = ChannelCoeffs(a_coeff=1.0, b_coeff=0.0,
                               hot_decay=1.0 - 2.0 * p)
        out = apply_affine(state, coeffs, which="single")
        assert abs(out.r) <= abs(state.r) + 1e-15


def _check_cycle_identities():
    res = run_cycle(OttoConfig())
    led = res.ledger
    assert abs(led.total()) < 1e-12, f"ledger imbalance {led.total():.3e}"
    a, b = res.coeffs.a_coeff, res.coeffs.b_coeff
    hd = res.coeffs.hot_decay
    assert abs(a * (res.r_c * hd) + b - res.r_c) < 1e-12, "closure fixed point"
    assert abs(res.r_h - res.r_c * hd) < 1e-15


_CHECKS = [
    ("complex erf vs series oracle", _check_erf_vs_series),
    ("complex erf symmetries", _check_erf_symmetries),
    ("thermal integrals vs 2D quadrature", _check_thermal_vs_oracle),
    ("small-speed branch seam", _check_branch_seam),
    ("commutator independent of temperature", _check_commutator_state_independence),
    ("kick channel vs projector assembly", _check_channel_vs_assembly),
    ("single kick bounds and contraction", _check_single_kick_contracts),
    ("cycle ledger and closure", _check_cycle_identities),
]


def run_selftest() -> int:
    """Run every check, print one line each, return the failure count."""
    failures = 0
    for name, check in _CHECKS:
        try:
            check()
        except Exception as exc:
            failures += 1
            print(f"FAIL: {name}: {exc}")
        else:
            print(f"ok:   {name}")
    if failures:
        print(f"{failures} of {len(_CHECKS)} checks failed")
    else:
        print(f"all {len(_CHECKS)} checks passed")
    return failures
