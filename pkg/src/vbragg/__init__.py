"""Modeling toolkit for pump-programmed ring-grating photonic interfaces."""

__version__ = "0.1.0"

from .errors import (ConvergenceError, OutOfRangeError, ValidationError,
                     VbraggError)

__all__ = [
    "ConvergenceError",
    "OutOfRangeError",
    "ValidationError",
    "VbraggError",
    "__version__",
]
