"""Exception types shared across the package."""


class RelottoError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpeed(RelottoError, ValueError):
    """Detector speed outside [0, v_max]."""


class QuadratureFailure(RelottoError, ArithmeticError):
    """An integral did not reach the requested tolerance.

    Carries the achieved error estimate and the target so callers can report
    how far off the evaluation was.
    """

    def __init__(self, message: str, achieved: float = float("nan"),
                 target: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved
        self.target = target


class OverflowGuard(RelottoError, OverflowError):
    """The unscaled complex error function would overflow double precision."""


class RadiusExceeded(RelottoError, ValueError):
    """Series evaluation requested outside its useful convergence radius."""


class PositivityViolation(RelottoError, ArithmeticError):
    """A channel update would leave the physical state space."""


class DegenerateCycle(RelottoError, ArithmeticError):
    """No unique closed cycle exists (both couplings effectively zero)."""


class PurityOutOfRange(RelottoError, ArithmeticError):
    """A purity value left [-1, 1], signalling inconsistent inputs."""


class ConfigError(RelottoError, ValueError):
    """Malformed configuration input (bad key, bad syntax)."""


class RangeError(ConfigError):
    """Configuration value outside its physical domain."""
