import math

import numpy as np
import pytest

from relotto.errors import InvalidSpeed, QuadratureFailure
from relotto.wightman import (BathSpec, OracleGrid, QuadratureConfig,
                              SmearingSpec, TrajectorySpec, field_variance,
                              field_variance_oracle, thermal_wightman,
                              wightman_im, wightman_oracle_2d, wightman_re)

T_REST = TrajectorySpec(0.0)
S_UNIT = SmearingSpec(1.0)

# frozen from two independent prototype routes (closed erf form and raw 2D
# mode quadrature agreed to ~1e-15 on these before the values were recorded)
VARIANCE_GOLDEN = [
    # (v, R, T, value)
    (0.0, 1.0, 1.0, 0.0788232553324282),
    (0.0, 1.0, 0.01, 0.03225986647508126),
    (0.5, 1.0, 1.0, 7.620855e-2),
]

WIGHTMAN_GOLDEN = [
    # (v, R, T, dtau, re, im)
    (0.5, 1.0, 0.01, math.sqrt(3.0), -8.878915e-3, 1.169997e-2),
    (0.5, 1.0, 1.0, 1.0, 3.515531e-2, 2.413153e-2),
    (0.9, 0.7, 0.01, 2.0, -9.810676e-3, 1.471695e-3),
    (0.25, 2.5, 0.5, 1.0, 1.350088e-2, 2.636383e-3),
    (1e-4, 1.0, 1.0, 1.0, 3.702203e-2, 2.413153e-2),
]


def _specs(v, radius, temp):
    return TrajectorySpec(v), SmearingSpec(radius), BathSpec(temp, v, 1.0)


# ---------------------------------------------------------------------------
# domain types

def test_trajectory_derived_quantities():
    t = TrajectorySpec(0.6)
    assert t.gamma == 1.25
    assert t.tau_dot == 0.8
    rng = np.random.default_rng(3)
    for v in rng.uniform(0.0, 0.99, 50):
        t = TrajectorySpec(v)
        assert abs(t.gamma * t.tau_dot - 1.0) <= 2.0 ** -52


def test_trajectory_speed_domain():
    TrajectorySpec(0.0)
    TrajectorySpec(0.99)
    with pytest.raises(InvalidSpeed):
        TrajectorySpec(-0.1)
    with pytest.raises(InvalidSpeed):
        TrajectorySpec(0.991)


def test_smearing_and_bath_validation():
    with pytest.raises(ValueError):
        SmearingSpec(0.0)
    with pytest.raises(ValueError):
        SmearingSpec(-1.0)
    with pytest.raises(ValueError):
        BathSpec(temperature=-0.5)
    with pytest.raises(ValueError):
        BathSpec(temperature=1.0, coupling=-1.0)
    assert BathSpec(temperature=0.0).beta == math.inf
    assert BathSpec(temperature=2.0).beta == 0.5


def test_quadrature_config_validation():
    QuadratureConfig()
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=1e-3)  # looser than allowed
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)


# ---------------------------------------------------------------------------
# frozen goldens

def test_variance_goldens():
    for v, radius, temp, want in VARIANCE_GOLDEN:
        traj, smear, bath = _specs(v, radius, temp)
        assert field_variance(traj, smear, bath) == pytest.approx(want, rel=1e-6)


def test_vacuum_variance_is_analytic():
    # zero temperature, any speed: the variance closes to 1/(pi^3 R^2)
    for v in (0.0, 0.5, 0.9):
        for radius in (0.5, 1.0, 2.0):
            got = field_variance(TrajectorySpec(v), SmearingSpec(radius),
                                 BathSpec(0.0, v, 1.0))
            assert got == pytest.approx(1.0 / (math.pi ** 3 * radius ** 2),
                                        rel=1e-9)


def test_wightman_goldens():
    for v, radius, temp, dtau, re, im in WIGHTMAN_GOLDEN:
        traj, smear, bath = _specs(v, radius, temp)
        w = thermal_wightman(traj, smear, bath, dtau)
        assert w.re_w == pytest.approx(re, rel=1e-6)
        assert w.im_w == pytest.approx(im, rel=1e-6)


# ---------------------------------------------------------------------------
# structural invariants

def test_variance_positive_across_domain():
    rng = np.random.default_rng(17)
    for _ in range(25):
        v = rng.uniform(0.0, 0.99)
        radius = rng.uniform(0.1, 10.0)
        temp = rng.uniform(0.001, 10.0)
        traj, smear, bath = _specs(v, radius, temp)
        assert field_variance(traj, smear, bath) > 0.0


def test_cauchy_schwarz_holds():
    rng = np.random.default_rng(29)
    for _ in range(15):
        v = rng.uniform(0.0, 0.95)
        radius = rng.uniform(0.3, 4.0)
        temp = rng.uniform(0.01, 5.0)
        dtau = rng.uniform(0.0, 10.0)
        traj, smear, bath = _specs(v, radius, temp)
        w = thermal_wightman(traj, smear, bath, dtau)
        assert w.re_w ** 2 + w.im_w ** 2 <= w.variance ** 2 * (1.0 + 1e-9)


def test_coincidence_limit():
    for v, radius, temp in [(0.0, 1.0, 1.0), (0.6, 0.8, 0.3), (0.9, 2.0, 0.05)]:
        traj, smear, bath = _specs(v, radius, temp)
        var = field_variance(traj, smear, bath)
        re0 = wightman_re(traj, smear, bath, 0.0)
        assert abs(re0 - var) <= 10.0 * 1e-9 * var
        assert wightman_im(traj, smear, 0.0) == 0.0


def test_variance_monotone_in_temperature():
    for v, radius in [(0.0, 1.0), (0.7, 0.5)]:
        traj = TrajectorySpec(v)
        smear = SmearingSpec(radius)
        temps = [0.0, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0]
        values = [field_variance(traj, smear, BathSpec(t, v, 1.0))
                  for t in temps]
        assert all(b > a for a, b in zip(values, values[1:]))


def test_negative_separation_rejected():
    traj, smear, bath = _specs(0.5, 1.0, 1.0)
    with pytest.raises(ValueError):
        wightman_re(traj, smear, bath, -1.0)
    with pytest.raises(ValueError):
        wightman_im(traj, smear, -0.5)


def test_bundle_matches_components():
    traj, smear, bath = _specs(0.4, 1.3, 0.7)
    w = thermal_wightman(traj, smear, bath, 1.9)
    assert w.variance == field_variance(traj, smear, bath)
    assert w.re_w == wightman_re(traj, smear, bath, 1.9)
    assert w.im_w == wightman_im(traj, smear, 1.9)
    assert w.delta_tau == 1.9


def test_quadrature_failure_reports_achieved_and_target():
    traj, smear, bath = _specs(0.5, 1.0, 1.0)
    starved = QuadratureConfig(max_subdivisions=1)
    with pytest.raises(QuadratureFailure) as err:
        field_variance(traj, smear, bath, starved)
    assert err.value.achieved > err.value.target > 0.0


# ---------------------------------------------------------------------------
# against the independent 2D mode integral

def test_oracle_direction_reversal():
    traj, smear, bath = _specs(0.5, 1.0, 1.0)
    fwd = wightman_oracle_2d(traj, smear, 2.0, bath, direction=1)
    bwd = wightman_oracle_2d(traj, smear, 2.0, bath, direction=-1)
    assert abs(fwd - bwd) <= 1e-12 * abs(fwd)


def test_oracle_agrees_with_closed_form():
    cases = [(0.5, 1.0, 1.0, 1.0), (0.75, 1.5, 2.0, 2.0), (0.25, 0.7, 0.5, 0.0)]
    for v, radius, temp, dtau in cases:
        traj, smear, bath = _specs(v, radius, temp)
        got = thermal_wightman(traj, smear, bath, dtau)
        ref = wightman_oracle_2d(traj, smear, dtau, bath)
        ref_var = field_variance_oracle(traj, smear, bath)
        scale = max(abs(ref), 1e-9 * ref_var)
        assert abs(complex(got.re_w, got.im_w) - ref) <= 1e-6 * scale
        assert abs(got.variance - ref_var) <= 1e-6 * ref_var


def test_oracle_refinement_is_converged():
    # doubling the oracle resolution must not move it at the tolerance used
    # to judge the closed form
    traj, smear, bath = _specs(0.6, 0.9, 0.8)
    coarse = wightman_oracle_2d(traj, smear, 1.5, bath, OracleGrid(refine=1.0))
    fine = wightman_oracle_2d(traj, smear, 1.5, bath, OracleGrid(refine=2.0))
    assert abs(coarse - fine) <= 1e-9 * abs(fine)


def test_small_speed_branch_is_seamless():
    # the series branch takes over below v = 1e-3; both sides must agree
    # with the oracle and with each other across the seam
    smear = SmearingSpec(1.0)
    for dtau in (0.0, 1.0):
        below = thermal_wightman(TrajectorySpec(0.000999), smear,
                                 BathSpec(1.0, 0.000999, 1.0), dtau)
        above = thermal_wightman(TrajectorySpec(0.001001), smear,
                                 BathSpec(1.0, 0.001001, 1.0), dtau)
        for name in ("variance", "re_w", "im_w"):
            a, b = getattr(below, name), getattr(above, name)
            scale = max(abs(a), 1e-9 * below.variance)
            assert abs(a - b) <= 1e-7 * scale, name
