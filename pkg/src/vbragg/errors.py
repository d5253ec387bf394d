"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: validation/contract problems exit 2,
numerical non-convergence exits 3, I/O failures exit 4.
"""


class VbraggError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(VbraggError):
    """Invalid input: bad config key, violated precondition, contract breach."""


class OutOfRangeError(ValidationError):
    """A value lies outside the supported span (e.g. wavelength lookup)."""


class ConvergenceError(VbraggError):
    """Adaptive quadrature failed to converge within the refinement cap.

    Carries the last two estimates so the caller can judge how far apart
    they still were.
    """

    def __init__(self, message: str, estimates: tuple[float, float]):
        super().__init__(message)
        self.estimates = estimates
