"""Adaptive quadrature for oscillatory special-function integrands.

Gauss-Kronrod-style scheme: each interval is scored with an embedded
7/15-point Gauss-Legendre pair, and intervals whose error estimate exceeds
their tolerance share are bisected. A depth cap keeps pathological
integrands from hanging; hitting it raises with the last two estimates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class QuadResult:
    value: float
    converged: bool
    n_evals: int


def _panel(f, a: float, b: float) -> tuple[float, float, int]:
    """Fine estimate and embedded error for one interval."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    coarse = half * float(np.dot(_W7, f(mid + half * _X7)))
    fine = half * float(np.dot(_W15, f(mid + half * _X15)))
    return fine, abs(fine - coarse), 22


def integrate_adaptive(f, a: float, b: float, tol_abs: float,
                       max_depth: int = 30) -> QuadResult:
    """Integrate a vectorized callable f over [a, b] to absolute tolerance.

    Raises ConvergenceError if any subinterval still fails its tolerance
    share at the bisection depth cap.
    """
    if a == b:
        return QuadResult(0.0, True, 0)
    total_evals = 0
    value = 0.0
    # stack entries: (a, b, depth, tol share)
    stack = [(a, b, 0, tol_abs)]
    while stack:
        lo, hi, depth, tol = stack.pop()
        fine, err, n = _panel(f, lo, hi)
        total_evals += n
        if err <= tol or err == 0.0:
            value += fine
            continue
        if depth >= max_depth:
            mid = 0.5 * (lo + hi)
            left, _, _ = _panel(f, lo, mid)
            right, _, _ = _panel(f, mid, hi)
            raise ConvergenceError(
                f"quadrature failed to converge on [{lo}, {hi}] after "
                f"{max_depth} bisection levels (error estimate {err:.3e} > {tol:.3e})",
                estimates=(fine, left + right),
            )
        mid = 0.5 * (lo + hi)
        stack.append((lo, mid, depth + 1, 0.5 * tol))
        stack.append((mid, hi, depth + 1, 0.5 * tol))
    return QuadResult(value, True, total_evals)
