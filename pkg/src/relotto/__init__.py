"""Exactly solvable delta-kicked two-level Otto cycle with moving thermal baths.

The layers, bottom up:

- :mod:`relotto.specfun` -- complex error function with a series oracle.
- :mod:`relotto.wightman` -- smeared thermal field correlators along an
  inertial worldline, in closed erf form plus a direct 2D quadrature oracle.
- :mod:`relotto.channel` -- exact single- and double-kick detector channels.
- :mod:`relotto.cycle` -- the four-stroke cycle, its closure condition and
  energy ledger.
- :mod:`relotto.sweep` / :mod:`relotto.cli` -- parameter grids and output.
"""

from .channel import (ChannelCoeffs, DetectorState, KickSpec,
                      VProductExpectations, apply_affine,
                      bit_flip_probability, double_kick_coeffs,
                      double_kick_coeffs_oracle, single_kick_decay,
                      v_product_expectations)
from .cycle import (CycleLedger, CycleResult, OperatingMode, OttoConfig,
                    closed_cycle_purity, cycle_ledger, extracted_work_per_gap,
                    proper_separation, run_cycle)
from .errors import (ConfigError, DegenerateCycle, InvalidSpeed, OverflowGuard,
                     PositivityViolation, PurityOutOfRange, QuadratureFailure,
                     RadiusExceeded, RangeError, RelottoError)
from .specfun import erf_complex, erf_complex_scaled, erf_real, erf_series_oracle
from .sweep import (AxisSpec, ResultRow, SweepSpec, emit, parse_config,
                    parse_config_text, sweep)
from .wightman import (BathSpec, QuadratureConfig, SmearingSpec,
                       TrajectorySpec, WightmanValues, field_variance,
                       field_variance_oracle, thermal_wightman, wightman_im,
                       wightman_oracle_2d, wightman_re)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # specfun
    "erf_real", "erf_complex", "erf_complex_scaled", "erf_series_oracle",
    # wightman
    "TrajectorySpec", "SmearingSpec", "BathSpec", "QuadratureConfig",
    "WightmanValues", "field_variance", "wightman_re", "wightman_im",
    "thermal_wightman", "field_variance_oracle", "wightman_oracle_2d",
    # channel
    "DetectorState", "KickSpec", "ChannelCoeffs", "VProductExpectations",
    "bit_flip_probability", "single_kick_decay", "v_product_expectations",
    "double_kick_coeffs", "double_kick_coeffs_oracle", "apply_affine",
    # cycle
    "OttoConfig", "OperatingMode", "CycleLedger", "CycleResult",
    "proper_separation", "closed_cycle_purity", "cycle_ledger",
    "extracted_work_per_gap", "run_cycle",
    # sweep
    "AxisSpec", "SweepSpec", "ResultRow", "parse_config", "parse_config_text",
    "sweep", "emit",
    # errors
    "RelottoError", "InvalidSpeed", "QuadratureFailure", "OverflowGuard",
    "RadiusExceeded", "PositivityViolation", "DegenerateCycle",
    "PurityOutOfRange", "ConfigError", "RangeError",
]
