"""Error function evaluation for real and complex arguments.

Every special-function call in the package goes through this module. The
integrands downstream need erf at complex argument x + iy where y grows with
the kick separation; since |erf(x+iy)| ~ e^{y^2 - x^2} for y > x, the raw
value overflows long before the physically relevant product
e^{-y^2} erf(x+iy) does. The scaled entry point computes that product
directly from the Faddeeva function w(z) via

    e^{-y^2} erf(x+iy) = e^{-y^2} - e^{-x^2} (cos 2xy - i sin 2xy) w(-y+ix)

which keeps every factor bounded for x >= 0 (and the symmetry relations
extend it to the remaining quadrants). Complex values are returned as the
built-in ``complex`` type; components are finite for finite inputs.

An mpmath Maclaurin series serves as an in-package verification oracle; it
shares no code with the Faddeeva path.
"""

from __future__ import annotations

import math

import mpmath
from scipy.special import dawsn, wofz

from .errors import OverflowGuard, RadiusExceeded

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)

#: Past this |Im z| the factor e^{y^2} (and erf itself near the imaginary
#: axis) exceeds the double-precision range, so only the scaled product is
#: representable.
_Y_OVERFLOW = 26.5

#: The Maclaurin series loses digits to cancellation as |z| grows; beyond
#: this radius it stops being a trustworthy oracle even in 40-digit
#: arithmetic with the contracted truncation rule.
_SERIES_RADIUS = 6.0


def erf_real(x: float) -> float:
    """erf(x) for real x.

    Thin wrapper over the libm implementation so that every caller in the
    package routes through one module. Total on finite reals; odd;
    |erf(x)| < 1 for finite x; returns 1.0 exactly (to double precision)
    for x >= 8.
    """
    return math.erf(x)


def erf_complex_scaled(x: float, y: float) -> complex:
    """The product e^{-y^2} * erf(x + iy), formed without either factor.

    Stays O(1) in magnitude for arbitrarily large |y|, which is what the
    thermal integrands actually consume (their Gaussian prefactor is exactly
    e^{-y^2}). Satisfies the same oddness and conjugation symmetries as erf.
    """
    sx = -1.0 if x < 0.0 else 1.0
    sy = -1.0 if y < 0.0 else 1.0
    u, v = abs(x), abs(y)
    if v == 0.0:
        return complex(sx * math.erf(u), 0.0)
    if u == 0.0:
        # e^{-y^2} erf(iy) = i e^{-y^2} erfi(y) and erfi(y) = (2/sqrt(pi)) e^{y^2} D(y)
        return complex(0.0, sy * _TWO_OVER_SQRT_PI * dawsn(v))
    w = wofz(complex(-v, u))
    val = math.exp(-v * v) \
        - math.exp(-u * u) * complex(math.cos(2 * u * v), -math.sin(2 * u * v)) * w
    return complex(sx * val.real, sy * val.imag)


def erf_complex(x: float, y: float) -> complex:
    """erf(x + iy) as a complex number.

    Accurate across the whole range the integrals reach (|y| up to well past
    10, x past 30). Internally always evaluates the scaled form and restores
    the e^{y^2} factor once, so no intermediate overflows for representable
    results.

    Raises
    ------
    OverflowGuard
        If |y| > 26.5, where the result itself cannot be represented in
        double precision; use :func:`erf_complex_scaled` there.
    """
    if abs(y) > _Y_OVERFLOW:
        raise OverflowGuard(
            f"erf({x} + {y}j) exceeds double-precision range; "
            "use erf_complex_scaled for the bounded product")
    scaled = erf_complex_scaled(x, y)
    if y == 0.0:
        return scaled
    return scaled * math.exp(y * y)


def erf_series_oracle(x: float, y: float) -> complex:
    """Maclaurin series of erf at x + iy, evaluated in 40-digit arithmetic.

    Independent of the Faddeeva path; used to cross-check erf_complex.
    Terms are accumulated until the next one falls below 1e-18 of the
    partial sum, which is only meaningful in extended precision (in double
    precision the alternating series loses ~7 digits to cancellation near
    the radius).

    Raises
    ------
    RadiusExceeded
        If |x + iy| > 6, outside the series' useful range.
    """
    r = math.hypot(x, y)
    if r > _SERIES_RADIUS:
        raise RadiusExceeded(f"|z| = {r:.4g} exceeds the series radius {_SERIES_RADIUS}")
    with mpmath.workdps(40):
        z = mpmath.mpc(x, y)
        if z == 0:
            return 0j
        term = z
        total = z
        zz = z * z
        cutoff = mpmath.mpf("1e-18")
        for n in range(1, 600):
            term = term * (-zz) / n
            total += term / (2 * n + 1)
            if abs(term) / (2 * n + 1) < cutoff * abs(total):
                break
        else:  # pragma: no cover - |z| <= 6 always converges by n ~ 100
            raise RadiusExceeded("series failed to converge")
        return complex(total * 2 / mpmath.sqrt(mpmath.pi))
