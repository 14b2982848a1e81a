"""Exception hierarchy shared across the package."""


class QiOmsError(Exception):
    """Base class for all package errors."""


class ParameterError(QiOmsError, ValueError):
    """A parameter violates a domain constraint.

    ``field`` names the offending parameter when there is one.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnsupportedConfigurationError(QiOmsError, ValueError):
    """The requested operation is only defined for a restricted parameter set."""


class NumericalError(QiOmsError, ArithmeticError):
    """Base class for failures of the numerics (exit code 1 in the CLI)."""


class SingularityError(NumericalError):
    """The linear response is singular, i.e. the system sits on an instability."""


class AccuracyError(NumericalError):
    """Quadrature failed to converge; ``best`` carries the last estimate."""

    def __init__(self, message, best=None, error_estimate=None):
        super().__init__(message)
        self.best = best
        self.error_estimate = error_estimate


class UsageError(QiOmsError):
    """Bad command line or configuration (exit code 2 in the CLI)."""
