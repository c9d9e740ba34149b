"""Exception types raised across the package."""


class PulsarGreenError(Exception):
    """Base class for all package errors."""


class DomainError(PulsarGreenError, ValueError):
    """Argument outside the region where an operation is defined."""


class PoleError(DomainError):
    """Argument sits on a pole of a gamma-type function."""


class ConvergenceError(PulsarGreenError, RuntimeError):
    """A series or iteration failed to converge within its budget."""


class ToleranceNotMetError(ConvergenceError):
    """Adaptive quadrature could not reach the requested tolerance.

    The best available estimate is kept on the exception.
    """

    def __init__(self, message, value, abs_error_estimate, evaluations):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate
        self.evaluations = evaluations


class NonFiniteIntegrandError(PulsarGreenError, ArithmeticError):
    """Integrand returned inf or nan."""


class MissedRootError(PulsarGreenError, RuntimeError):
    """Eigenvalue bracketing found a window with other than one root."""


class NonPositiveNormalizationError(PulsarGreenError, ArithmeticError):
    """A normalization integral came out non-positive (misconverged eigenvalue)."""


class ResonanceError(PulsarGreenError, ArithmeticError):
    """A denominator in a closed form or series term vanishes."""


class DivergenceError(PulsarGreenError, ArithmeticError):
    """An energy moment is infinite because lambda_0 <= ell + 1."""


class GridError(DomainError):
    """Invalid tabulated source spectrum or energy grid."""
