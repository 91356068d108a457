"""Thermal two-point functions of a Gaussian-smeared field on an inertial worldline.

Three quantities feed the kick channels downstream: the smeared-field
variance, and the real and imaginary parts of the two-point correlator
W(dtau) at proper-time separation dtau. For a detector moving at constant
speed v through an isotropic thermal bath, the angular integration reduces
all three to semi-infinite k-integrals over differences of error functions
at complex argument:

    variance / Re W:  pref * Int_0^inf coth(beta k / 2) Re[S(cp k, d) - S(cm k, d)] dk
    Im W:             pref * Int_0^inf            -Im[S(cp k, d) - S(cm k, d)] dk

where S(x, y) = e^{-y^2} erf(x + iy) (the scaled entry point of
:mod:`relotto.specfun`), cp/cm = sqrt(pi/8) gamma R (1 +/- v),
d = sqrt(2/pi) dtau / R, and pref = 1/(sqrt(32) pi^2 gamma v R). The
correlator's Gaussian damping e^{-2 dtau^2 / (pi R^2)} equals e^{-d^2} and
is absorbed into S, so large separations never overflow. The imaginary part
carries no coth factor: it is the state-independent commutator.

The 1/v prefactor cancels against the O(v) bracket; below ``V_THRESHOLD``
the code switches to the analytic small-v expansion of the bracket
(including its O(v^2) term, which is what keeps the two branches glued to
better than 1e-8 at the threshold).

A brute-force 2D mode integral over (k, cos theta), built directly from the
boosted Gaussian form factor with no error functions involved, provides an
independent oracle for all three quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad as _scipy_quad

from .errors import InvalidSpeed, QuadratureFailure
from .specfun import erf_complex_scaled

__all__ = [
    "V_MAX", "V_THRESHOLD",
    "TrajectorySpec", "SmearingSpec", "BathSpec", "WightmanValues",
    "QuadratureConfig", "OracleGrid",
    "field_variance", "wightman_re", "wightman_im", "thermal_wightman",
    "field_variance_oracle", "wightman_oracle_2d",
]

_SQRT_PI_8 = math.sqrt(math.pi / 8.0)
_SQRT_2_PI = math.sqrt(2.0 / math.pi)
_SQRT_8_PI = math.sqrt(8.0 / math.pi)
_SQRT_32 = math.sqrt(32.0)

#: Highest supported detector speed. Beyond this the (1 - v) blueshift wedge
#: pushes the quadrature cutoff k_cut ~ 1/(gamma (1 - v) R) out far enough
#: that runtime and conditioning degrade with no physics payoff.
V_MAX = 0.99

#: Below this speed the direct 1/v-prefactor evaluation loses all significant
#: digits and the analytic small-v expansion takes over.
V_THRESHOLD = 1e-3

# Bath colder than T = 0.01 (beta >= 100): the coth knee at k ~ 1/beta gets
# its own integration piece with the Laurent-series integrand.
_LOW_T_BETA = 100.0

# c_minus * k_cut: the scaled-erf bracket tail beyond the cutoff is below
# ~e^{-56} there, orders of magnitude under any abs_tol in use.
_KCUT_SIGMA = 7.5


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class TrajectorySpec:
    """Inertial worldline at constant speed v (units of c).

    gamma and tau_dot are derived so that gamma * tau_dot = 1 to rounding.
    """

    v: float

    def __post_init__(self):
        if not 0.0 <= self.v <= V_MAX:
            raise InvalidSpeed(f"speed {self.v} outside [0, {V_MAX}]")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.v * self.v)

    @property
    def tau_dot(self) -> float:
        return 1.0 / self.gamma


@dataclass(frozen=True)
class SmearingSpec:
    """Gaussian smearing profile; radius is the effective detector size R."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"smearing radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class BathSpec:
    """One isochoric contact: bath temperature, detector speed through it,
    and the kick coupling strength used there. temperature = 0 encodes the
    vacuum (beta -> inf)."""

    temperature: float
    v: float = 0.0
    coupling: float = 0.0

    def __post_init__(self):
        if self.temperature < 0.0:
            raise ValueError(f"temperature must be nonnegative, got {self.temperature}")
        if self.coupling < 0.0:
            raise ValueError(f"coupling must be nonnegative, got {self.coupling}")

    @property
    def beta(self) -> float:
        return math.inf if self.temperature == 0.0 else 1.0 / self.temperature


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1e-3:
            raise ValueError("rel_tol must lie in (0, 1e-3)")
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class WightmanValues:
    """The three thermal field quantities at one separation.

    For the stationary (inertial, constant-speed) trajectory the one-point
    variance is time independent, so a single variance covers both kick
    instants. Cauchy-Schwarz, re_w^2 + im_w^2 <= variance^2, is checked by
    the :func:`thermal_wightman` builder.
    """

    variance: float
    re_w: float
    im_w: float
    delta_tau: float


@dataclass(frozen=True)
class OracleGrid:
    """Resolution knobs for the brute-force 2D mode integral."""

    refine: float = 1.0
    points_per_panel: int = 12


_DEFAULT_QUAD = QuadratureConfig()


# ---------------------------------------------------------------------------
# scalar helpers

def _coth_half(beta: float, k: float) -> float:
    """coth(beta k / 2); 1 in the vacuum limit; series-stabilized near 0."""
    if not math.isfinite(beta):
        return 1.0
    x = 0.5 * beta * k
    if x < 1e-4:
        return 1.0 / x + x / 3.0
    return 1.0 / math.tanh(x)


def _coth_series(x: float) -> float:
    # Laurent expansion of coth, good to ~1e-9 relative at x = 1/2 (the
    # largest value the low-T split ever feeds it).
    x2 = x * x
    return (1.0 / x + x * (1.0 / 3.0
                           + x2 * (-1.0 / 45.0
                                   + x2 * (2.0 / 945.0
                                           + x2 * (-1.0 / 4725.0
                                                   + x2 * (2.0 / 93555.0))))))


def _quad_piece(f, lo, hi, pts, cfg: QuadratureConfig):
    inner = sorted(p for p in pts if lo < p < hi)
    # QUADPACK needs the subdivision limit to exceed the break-point count;
    # a smaller budget still gets its tolerance enforced afterwards
    limit = max(cfg.max_subdivisions, len(inner) + 2)
    res = _scipy_quad(f, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                      limit=limit, points=inner or None,
                      full_output=1)
    return res[0], res[1]


def _integrate_thermal(body, beta, kcut, pts, cfg, with_coth):
    """Integrate body(k) (x coth(beta k/2) when thermal) over [0, kcut].

    Cold baths (beta >= 100) get the knee piece [0, 1/beta] with the coth
    Laurent series; the remainder uses the exact coth. The summed QUADPACK
    error estimates must meet the configured tolerance or the call raises.
    """
    pieces = []
    if with_coth and math.isfinite(beta) and beta >= _LOW_T_BETA:
        k0 = 1.0 / beta
        if k0 < 0.5 * kcut:
            pieces.append((0.0, k0,
                           lambda k: body(k) * _coth_series(0.5 * beta * k)))
            pieces.append((k0, kcut,
                           lambda k: body(k) * _coth_half(beta, k)))
    if not pieces:
        if with_coth:
            pieces.append((0.0, kcut, lambda k: body(k) * _coth_half(beta, k)))
        else:
            pieces.append((0.0, kcut, body))

    total = 0.0
    err = 0.0
    biggest = 0.0
    for lo, hi, f in pieces:
        val, est = _quad_piece(f, lo, hi, pts, cfg)
        total += val
        err += est
        biggest = max(biggest, abs(val))
    # The per-piece magnitudes guard the relative check against cancellation
    # between pieces. The absolute arm gets 10x headroom: on strongly
    # oscillatory near-zero integrals (large separations) QUADPACK's roundoff
    # estimate bottoms out a factor of a few above epsabs while the value
    # itself is good to the floor.
    target = max(10.0 * len(pieces) * cfg.abs_tol,
                 cfg.rel_tol * max(abs(total), biggest))
    if not err <= target:
        raise QuadratureFailure(
            f"error estimate {err:.3e} exceeds target {target:.3e} "
            f"within {cfg.max_subdivisions} subdivisions",
            achieved=err, target=target)
    return total


def _check_tail(bound: float, cfg: QuadratureConfig):
    if not bound < cfg.abs_tol:
        raise QuadratureFailure(
            f"analytic tail bound {bound:.3e} not below abs_tol {cfg.abs_tol:.3e}",
            achieved=bound, target=cfg.abs_tol)


# ---------------------------------------------------------------------------
# the two integrand branches

def _erf_form(v, R, beta, dtau, part, cfg):
    gamma = 1.0 / math.sqrt(1.0 - v * v)
    c = _SQRT_PI_8 * gamma * R
    cp = c * (1.0 + v)
    cm = c * (1.0 - v)
    d = _SQRT_2_PI * dtau / R
    pref = 1.0 / (_SQRT_32 * math.pi ** 2 * gamma * v * R)
    kcut = _KCUT_SIGMA / cm

    with_coth = part != "im"
    if with_coth:
        def body(k):
            br = erf_complex_scaled(cp * k, d) - erf_complex_scaled(cm * k, d)
            return br.real
    else:
        def body(k):
            br = erf_complex_scaled(cp * k, d) - erf_complex_scaled(cm * k, d)
            return -br.imag

    # |bracket| <= 2 e^{-(cm k)^2} / (sqrt(pi) cm k) past the cutoff, so the
    # dropped tail is below pref * coth * e^{-a^2} / (sqrt(pi) cm a^2)
    a = cm * kcut
    tail = abs(pref) * _coth_half(beta if with_coth else math.inf, kcut) \
        * math.exp(-a * a) / (math.sqrt(math.pi) * cm * a * a)
    _check_tail(tail, cfg)

    pts = [1.0 / cp, 1.0 / cm]
    if with_coth and math.isfinite(beta):
        pts += [1.0 / beta, 42.0 / beta]
    return pref * _integrate_thermal(body, beta, kcut, pts, cfg, with_coth)


def _series_form(v, R, beta, dtau, part, cfg):
    # Small-v expansion of the bracket: the O(v) slope cancels the 1/v
    # prefactor; the O(v^2)-relative correction keeps the seam with the
    # direct branch below 1e-8 at v = V_THRESHOLD.
    gamma = 1.0 / math.sqrt(1.0 - v * v)
    c = _SQRT_PI_8 * gamma * R
    d = _SQRT_2_PI * dtau / R
    pref = 1.0 / (_SQRT_32 * math.pi ** 2 * gamma * R)
    kcut = _KCUT_SIGMA / c
    v2_6 = v * v / 6.0
    four_over_rtpi = 4.0 / math.sqrt(math.pi)

    def base(k):
        ck = c * k
        w0 = complex(ck, d)
        amp = ck + v2_6 * ck ** 3 * (4.0 * w0 * w0 - 2.0)
        return four_over_rtpi * math.exp(-ck * ck) * amp \
            * complex(math.cos(2.0 * ck * d), -math.sin(2.0 * ck * d))

    with_coth = part != "im"
    if with_coth:
        body = lambda k: base(k).real
    else:
        body = lambda k: -base(k).imag

    a = c * kcut
    corr = 1.0 + v2_6 * a * a * (4.0 * (a * a + d * d) + 2.0)
    tail = abs(pref) * _coth_half(beta if with_coth else math.inf, kcut) \
        * four_over_rtpi * corr * math.exp(-a * a) / (2.0 * c)
    _check_tail(tail, cfg)

    pts = [1.0 / c]
    if with_coth and math.isfinite(beta):
        pts += [1.0 / beta, 42.0 / beta]
    return pref * _integrate_thermal(body, beta, kcut, pts, cfg, with_coth)


@lru_cache(maxsize=65536)
def _wightman_part(v, R, beta, dtau, part, rel_tol, abs_tol, max_subdivisions):
    cfg = QuadratureConfig(rel_tol, abs_tol, max_subdivisions)
    if v < V_THRESHOLD:
        return _series_form(v, R, beta, dtau, part, cfg)
    return _erf_form(v, R, beta, dtau, part, cfg)


# ---------------------------------------------------------------------------
# public operations

def field_variance(traj: TrajectorySpec, smear: SmearingSpec, bath: BathSpec,
                   quad: QuadratureConfig = _DEFAULT_QUAD) -> float:
    """Thermal variance of the smeared field on the moving worldline.

    Strictly positive; independent of the kick time (the inertial
    trajectory is stationary in the bath frame).
    """
    val = _wightman_part(traj.v, smear.radius, bath.beta, 0.0, "re",
                         quad.rel_tol, quad.abs_tol, quad.max_subdivisions)
    if not val > 0.0:
        raise QuadratureFailure(
            f"variance came out nonpositive ({val!r}); integrand inputs are "
            "outside the trustworthy regime")
    return val


def wightman_re(traj: TrajectorySpec, smear: SmearingSpec, bath: BathSpec,
                delta_tau: float, quad: QuadratureConfig = _DEFAULT_QUAD) -> float:
    """Re W at proper-time separation delta_tau >= 0.

    Reduces to the variance at coincidence (delta_tau = 0).
    """
    if delta_tau < 0.0:
        raise ValueError("delta_tau must be nonnegative")
    return _wightman_part(traj.v, smear.radius, bath.beta, delta_tau, "re",
                          quad.rel_tol, quad.abs_tol, quad.max_subdivisions)


def wightman_im(traj: TrajectorySpec, smear: SmearingSpec,
                delta_tau: float, quad: QuadratureConfig = _DEFAULT_QUAD) -> float:
    """Im W at proper-time separation delta_tau >= 0.

    Temperature independent (the commutator carries no coth factor), hence
    no bath argument. Exactly zero at coincidence.
    """
    if delta_tau < 0.0:
        raise ValueError("delta_tau must be nonnegative")
    if delta_tau == 0.0:
        return 0.0
    return _wightman_part(traj.v, smear.radius, math.inf, delta_tau, "im",
                          quad.rel_tol, quad.abs_tol, quad.max_subdivisions)


def thermal_wightman(traj: TrajectorySpec, smear: SmearingSpec, bath: BathSpec,
                     delta_tau: float,
                     quad: QuadratureConfig = _DEFAULT_QUAD) -> WightmanValues:
    """Bundle variance, Re W and Im W at one separation, with the
    Cauchy-Schwarz sanity check applied."""
    var = field_variance(traj, smear, bath, quad)
    re = wightman_re(traj, smear, bath, delta_tau, quad)
    im = wightman_im(traj, smear, delta_tau, quad)
    if re * re + im * im > var * var * (1.0 + 1e-9):
        raise QuadratureFailure(
            f"|W|^2 = {re * re + im * im:.6e} exceeds variance^2 = "
            f"{var * var:.6e}; quadrature results are inconsistent")
    return WightmanValues(variance=var, re_w=re, im_w=im, delta_tau=delta_tau)


# ---------------------------------------------------------------------------
# brute-force 2D mode-integral oracle

def wightman_oracle_2d(traj: TrajectorySpec, smear: SmearingSpec,
                       delta_tau: float, bath: BathSpec,
                       grid: OracleGrid = OracleGrid(),
                       direction: int = 1) -> complex:
    """W(delta_tau) from the raw 2D mode integral, no error functions.

    Composite Gauss-Legendre panels over k and mu = cos(theta), with panel
    widths set by the narrowest of the boosted Gaussian width and the phase
    oscillation scale. ``direction`` flips the sign of the velocity
    projection (the result must not depend on it). Entirely independent of
    the erf-form code path.
    """
    v, gamma, R = traj.v, traj.gamma, smear.radius
    beta = bath.beta
    c = _SQRT_PI_8 * gamma * R

    kmax = 7.2 * _SQRT_8_PI / (gamma * R * (1.0 - v))
    om_k = gamma * abs(delta_tau) * (1.0 + v)
    wk = min(1.0 / (c * (1.0 + v)),
             4.0 / om_k if om_k > 0 else math.inf) / grid.refine
    mandatory = [0.0]
    if math.isfinite(beta):
        edge = 1.0 / beta
        while edge < min(42.0 / beta, kmax):
            mandatory.append(edge)
            edge *= 2.0
    mandatory.append(kmax)
    mandatory = sorted(set(mandatory))
    edges = [mandatory[0]]
    for lo, hi in zip(mandatory[:-1], mandatory[1:]):
        n = max(1, int(math.ceil((hi - lo) / wk)))
        edges.extend(np.linspace(lo, hi, n + 1)[1:])
    k_edges = np.asarray(edges)

    om_mu = kmax * gamma * abs(delta_tau) * v
    wedge = _SQRT_8_PI / (kmax * gamma * R * max(v, 1e-12)) / 3.0
    wmu = min(max(wedge, 1e-5),
              4.0 / om_mu if om_mu > 0 else math.inf, 0.25) / grid.refine
    n_mu = max(4, int(math.ceil(2.0 / wmu)))
    mu_edges = np.linspace(-1.0, 1.0, n_mu + 1)

    xg, wg = np.polynomial.legendre.leggauss(grid.points_per_panel)

    def nodes(e):
        lo, hi = e[:-1], e[1:]
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return ((mid[:, None] + half[:, None] * xg[None, :]).ravel(),
                (half[:, None] * wg[None, :]).ravel())

    kk, kw = nodes(k_edges)
    mm, mw = nodes(mu_edges)
    if math.isfinite(beta):
        x = 0.5 * beta * kk
        cth = np.where(x < 1e-4,
                       1.0 / np.maximum(x, 1e-300) + x / 3.0,
                       1.0 / np.tanh(np.maximum(x, 1e-300)))
    else:
        cth = np.ones_like(kk)

    total = 0.0 + 0.0j
    for i0 in range(0, len(kk), 1024):
        sl = slice(i0, i0 + 1024)
        K = kk[sl][:, None]
        W = kw[sl][:, None]
        C = cth[sl][:, None]
        A = 1.0 - direction * v * mm[None, :]
        amp = np.exp(-math.pi * K * K * gamma * gamma * R * R * A * A / 8.0)
        ph = K * gamma * delta_tau * A
        total += np.sum((K / (8.0 * math.pi ** 2)) * amp
                        * (C * np.cos(ph) + 1j * np.sin(ph)) * W * mw[None, :])
    total = complex(total)
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise QuadratureFailure(f"oracle integral not finite: {total!r}")
    return total


def field_variance_oracle(traj: TrajectorySpec, smear: SmearingSpec,
                          bath: BathSpec, grid: OracleGrid = OracleGrid(),
                          direction: int = 1) -> float:
    """Variance from the 2D mode integral (coincidence limit of the oracle)."""
    return wightman_oracle_2d(traj, smear, 0.0, bath, grid, direction).real
