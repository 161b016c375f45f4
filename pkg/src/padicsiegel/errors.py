"""Exception taxonomy shared by all modules.

Every certified-decision failure mode gets its own class so callers (and the
CLI) can distinguish "the math says no" from "the precision ran out".
"""


class PadicError(Exception):
    """Base class for all structured errors raised by this package."""


class ConfigError(PadicError):
    """Invalid field or suite configuration (non-prime p, e < 1, ...)."""


class ParameterMismatch(PadicError):
    """Operands live over incompatible field parameters."""


class PrecisionLoss(PadicError):
    """A result or decision cannot be certified at working precision.

    Raised by cancellation that leaves fewer significant digits than the
    configured floor, and by decision procedures (pivot selection, rank,
    membership thresholds) whose verdict would depend on digits we do not
    hold.  Verification suites report such cases as skipped, never as failed.
    """


class Singular(PadicError):
    """Matrix inversion/solve hit a matrix that is singular at working precision."""


class NotInU0(PadicError):
    """Group element lies outside the big cell: its lower-left block is not invertible."""


class RamificationInsufficient(PadicError):
    """A requested point needs fractional valuations the chosen e does not provide."""


class IrreduciblePole(PadicError):
    """A denominator does not split over the coefficient field at working precision."""


class Unsupported(PadicError):
    """The operation is valid mathematics but outside the implemented range."""
