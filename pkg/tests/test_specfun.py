import cmath
import math

import numpy as np
import pytest
from scipy.special import erf as scipy_erf

from relotto.errors import OverflowGuard, RadiusExceeded
from relotto.specfun import (erf_complex, erf_complex_scaled, erf_real,
                             erf_series_oracle)

# mpmath.erf at 30 digits, frozen
ERF_GOLDEN = {
    (1.0, 1.0): (1.3161512816979476, 0.19045346923783469),
    (0.5, 2.0): (13.839985667741279, -1.0429925008314203),
    (-2.0, 3.0): (20.829461427614568, 8.6873182714701631),
    (3.0, -0.5): (1.0000280653614764, 2.6284897222588231e-7),
    (0.0, 2.5): (0.0, 130.39575501324693),
    (4.0, 0.0): (0.9999999845827421, 0.0),
    (2.0, 5.0): (96103547.825516547, 101670558.3582518),
}

# e^{-y^2} erf(x + iy) where erf itself is astronomically large or tiny
SCALED_GOLDEN = {
    (1.0, 12.0): (-0.016221173562363564, 0.0060009719518655964),
    (5.0, 30.0): (-2.5324541005775306e-13, -4.8027660378632945e-14),
    (0.25, 50.0): (-0.0014557575800885898, 0.010501710741647855),
}


def test_real_erf_matches_libm_and_scipy():
    for x in np.linspace(-6, 6, 41):
        assert erf_real(x) == math.erf(x)
        assert erf_real(x) == pytest.approx(float(scipy_erf(x)), rel=1e-15)


def test_complex_erf_against_frozen_goldens():
    for (x, y), (re, im) in ERF_GOLDEN.items():
        got = erf_complex(x, y)
        want = complex(re, im)
        assert abs(got - want) <= 1e-13 * abs(want) + 1e-300


def test_scaled_erf_against_frozen_goldens():
    for (x, y), (re, im) in SCALED_GOLDEN.items():
        got = erf_complex_scaled(x, y)
        want = complex(re, im)
        assert abs(got - want) <= 1e-13 * abs(want)


def test_scaled_times_gaussian_equals_unscaled():
    rng = np.random.default_rng(5)
    for _ in range(200):
        x = rng.uniform(-4, 4)
        y = rng.uniform(-3, 3)
        full = erf_complex(x, y)
        scaled = erf_complex_scaled(x, y)
        assert abs(scaled * math.exp(y * y) - full) <= 1e-13 * max(abs(full), 1e-300)


def test_main_path_matches_series_oracle():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(400):
        x = rng.uniform(-4.0, 4.0)
        y = rng.uniform(-4.0, 4.0)
        if math.hypot(x, y) > 5.8:
            continue
        got = erf_complex(x, y)
        ref = erf_series_oracle(x, y)
        worst = max(worst, abs(got - ref) / max(abs(ref), 1e-300))
    assert worst < 1e-12


def test_all_four_quadrants_hit_goldens():
    # the quadrant folding must reproduce the symmetries, not just define them
    x, y = 1.3, 0.8
    base = erf_series_oracle(x, y)
    assert abs(erf_complex(x, y) - base) < 1e-13 * abs(base)
    assert abs(erf_complex(-x, y) - (-base.conjugate())) < 1e-13 * abs(base)
    assert abs(erf_complex(x, -y) - base.conjugate()) < 1e-13 * abs(base)
    assert abs(erf_complex(-x, -y) - (-base)) < 1e-13 * abs(base)


def test_oddness_and_conjugation_exact():
    rng = np.random.default_rng(11)
    for _ in range(100):
        x = rng.uniform(-5, 5)
        y = rng.uniform(-5, 5)
        f = erf_complex_scaled(x, y)
        assert erf_complex_scaled(-x, -y) == -f
        assert erf_complex_scaled(x, -y) == f.conjugate()


def test_axes_are_pure():
    assert erf_complex(1.5, 0.0) == complex(math.erf(1.5), 0.0)
    on_imag = erf_complex(0.0, 1.5)
    assert on_imag.real == 0.0
    assert on_imag.imag > 0.0
    assert erf_complex(0.0, 0.0) == 0j
    assert erf_series_oracle(0.0, 0.0) == 0j


def test_scaled_form_is_bounded_at_extreme_y():
    for y in (100.0, 1000.0, 1e6):
        val = erf_complex_scaled(2.0, y)
        assert cmath.isfinite(val)
        assert abs(val) < 2.0


def test_overflow_guard_on_unscaled_entry():
    with pytest.raises(OverflowGuard):
        erf_complex(1.0, 27.0)
    # just inside the guard still works
    assert cmath.isfinite(erf_complex(1.0, 26.4))


def test_series_oracle_radius():
    with pytest.raises(RadiusExceeded):
        erf_series_oracle(5.0, 4.0)
    # |z| = 6 exactly is allowed
    val = erf_series_oracle(6.0, 0.0)
    assert abs(val - complex(math.erf(6.0), 0.0)) < 1e-14
