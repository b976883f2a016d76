"""Adaptive quadrature with an absolute-tolerance contract."""

from __future__ import annotations

import math
from typing import Callable

from scipy import integrate

from .errors import DomainError, NumericalFailure

DEFAULT_TOL = 1e-12
MAX_SUBINTERVALS = 60
# accuracy floor, in ulps of the result, below which round-off dominates
ROUNDOFF_ULPS = 64
_EPS = 2.220446049250313e-16


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    limit: int = MAX_SUBINTERVALS,
) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Globally adaptive Gauss-Kronrod (QUADPACK QAGS) with ``epsrel=0`` so the
    accuracy target is purely absolute.  The target is floored at
    ``ROUNDOFF_ULPS`` ulps of the result, since an absolute tolerance below
    that cannot be resolved in double precision.  Deterministic for identical
    inputs.

    Raises
    ------
    NumericalFailure
        If the error estimate exceeds ``tol`` once ``limit`` subintervals are
        used; the exception carries the best estimate and its error.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"non-finite limits [{a!r}, {b!r}]")
    if a > b:
        raise DomainError(f"require a <= b, got [{a!r}, {b!r}]")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if a == b:
        return 0.0
    out = integrate.quad(f, a, b, epsabs=tol, epsrel=0.0, limit=limit, full_output=1)
    value, err = out[0], out[1]
    floor = max(tol, ROUNDOFF_ULPS * _EPS * abs(value))
    converged = len(out) == 3 and err <= tol
    roundoff_limited = err <= floor
    if not math.isfinite(value) or not (converged or roundoff_limited):
        msg = out[3] if len(out) > 3 else "error estimate above tolerance"
        raise NumericalFailure(
            f"quadrature did not converge on [{a}, {b}]: {msg}", estimate=value, error=err
        )
    return float(value)
