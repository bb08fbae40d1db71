"""Principal branch of the Lambert W function.

W(x) solves w * exp(w) = x. Only the principal branch (w >= -1, defined for
x >= -1/e) is provided: every argument the optimal-length solvers produce,
-2*g^2/e^2 with g in (0, 1] and 2*(sigma - 1)/e^2 with sigma >= 0, lies in
[-2/e^2, inf) which is strictly inside the principal domain. The secondary
real branch W_-1 is never needed and deliberately not implemented.

The evaluation uses a series about the branch point x = -1/e for arguments
close to it, the asymptote log(x) - log(log(x)) for large x, and a simple
rational seed in between, then polishes with Halley iterations until the
residual |w*exp(w) - x| falls below machine-level tolerance.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = ["BRANCH_POINT", "lambert_w0"]

# x = -1/e, the left edge of the principal branch.
BRANCH_POINT = -math.exp(-1.0)

_RESIDUAL_TOL = 1e-14
_MAX_ITER = 60


def _initial_guess(x: float) -> float:
    if x < -0.25:
        # Series about the branch point: w = -1 + p - p^2/3 + 11 p^3/72,
        # p = sqrt(2 (e x + 1)).
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    if x < math.e:
        # Crude rational seed; Halley converges cubically from here.
        return x / (1.0 + x)
    lx = math.log(x)
    return lx - math.log(lx)


def lambert_w0(x: float) -> float:
    """Evaluate the principal-branch Lambert W at ``x``.

    Parameters
    ----------
    x : float
        Argument, must be finite and >= -1/e (the branch point).

    Returns
    -------
    float
        w >= -1 with ``w * exp(w) == x`` to within 1e-12 absolute residual
        (relative for |x| > 1).

    Raises
    ------
    DomainError
        If ``x`` is non-finite or lies below the branch point -1/e, where
        the principal real branch does not exist.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"lambert_w0 requires a finite argument, got {x!r}")
    if x < BRANCH_POINT:
        raise DomainError(
            f"lambert_w0 is real only for x >= -1/e = {BRANCH_POINT!r} "
            f"(the branch point); got x = {x!r}"
        )
    if x == 0.0:
        return 0.0
    if math.e * x + 1.0 <= 0.0:
        # At the branch point to within floating-point noise.
        return -1.0

    w = _initial_guess(x)
    tol = _RESIDUAL_TOL * max(1.0, abs(x))
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= tol:
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            # Sitting exactly on the derivative zero at the branch point.
            w += 1e-12
            continue
        # Halley step for f(w) = w e^w - x.
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))

    residual = abs(w * math.exp(w) - x)
    if residual > 1e-12 * max(1.0, abs(x)):
        raise DomainError(
            f"lambert_w0 failed to converge at x = {x!r} (residual {residual:g})"
        )
    return w
