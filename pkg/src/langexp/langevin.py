"""
The Langevin function L(x) = coth(x) - 1/x, its derivative and its inverse.

All functions here are scalar and pure. Near the origin the closed forms
cancel badly, so a Maclaurin series is used for ``|x| < SERIES_THRESHOLD``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConvergenceError, DomainError

__all__ = [
    "InverseTolerance",
    "InverseResult",
    "DEFAULT_TOLERANCE",
    "SERIES_THRESHOLD",
    "PADE_BD",
    "PADE_BN",
    "langevin",
    "langevin_derivative",
    "langevin_series_coefficients",
    "inv_langevin_pade",
    "inv_langevin",
    "solve_inv_langevin",
]

SERIES_THRESHOLD = 0.1
# Beyond this 1/sinh(x)^2 < 1e-300, so coth(x) == 1 in double precision.
SATURATION_THRESHOLD = 350.0

_PI2 = math.pi * math.pi
PADE_BD = (20.0 * _PI2 - 144.0) / (_PI2 * (60.0 - 5.0 * _PI2))
PADE_BN = _PI2 / 12.0 * PADE_BD


@dataclass(frozen=True)
class InverseTolerance:
    """Stopping rule for :func:`inv_langevin`."""

    abs_tol: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter!r}")


DEFAULT_TOLERANCE = InverseTolerance()


@dataclass(frozen=True)
class InverseResult:
    x: float
    iterations: int
    residual: float


@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> tuple[Fraction, ...]:
    # B_0, B_2, ..., B_{2m} via the Akiyama-Tanigawa algorithm.
    size = 2 * m + 1
    a = [Fraction(0)] * (size + 1)
    out = []
    for n in range(size):
        a[n] = Fraction(1, n + 1)
        for j in range(n, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if n % 2 == 0:
            out.append(a[0])
    return tuple(out)


@lru_cache(maxsize=None)
def langevin_series_coefficients(n_terms: int) -> tuple[Fraction, ...]:
    """Exact Maclaurin coefficients c_1..c_n with L(x) = sum c_j x**(2j-1).

    c_j = 2**(2j) B_{2j} / (2j)!, so c_1 = 1/3, c_2 = -1/45, c_3 = 2/945, ...
    """
    bern = _bernoulli_even(n_terms)
    return tuple(
        Fraction(2 ** (2 * j)) * bern[j] / math.factorial(2 * j)
        for j in range(1, n_terms + 1)
    )


_L_SERIES = tuple(float(c) for c in langevin_series_coefficients(6))
# d/dx of the series above, coefficient of x**(2j-2)
_DL_SERIES = tuple(
    float((2 * j - 1) * c) for j, c in enumerate(langevin_series_coefficients(6), start=1)
)


def _check_finite(x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    return x


def _poly_in_square(coeffs, x2):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x2 + c
    return acc


def langevin(x: float) -> float:
    """Langevin function L(x) = coth(x) - 1/x, with L(0) = 0.

    Parameters
    ----------
    x : float
        Finite real argument.

    Returns
    -------
    float
        L(x), strictly inside (-1, 1). Odd in ``x`` bit-for-bit.
    """
    x = _check_finite(x)
    ax = abs(x)
    if ax < SERIES_THRESHOLD:
        return x * _poly_in_square(_L_SERIES, x * x)
    if ax > SATURATION_THRESHOLD:
        val = 1.0 - 1.0 / ax
    else:
        # coth(a) = 1 + 2/expm1(2a) for a > 0
        val = 1.0 + 2.0 / math.expm1(2.0 * ax) - 1.0 / ax
    return math.copysign(val, x)


def langevin_derivative(x: float) -> float:
    """Derivative dL/dx = 1 - L(x)**2 - 2 L(x)/x.

    Evaluated as 1/x**2 - 1/sinh(x)**2, which is the same function without
    the cancellation between ``1 - L**2`` and ``2L/x`` at large ``|x|``.
    Value lies in (0, 1/3] with 1/3 at the origin.
    """
    x = _check_finite(x)
    ax = abs(x)
    if ax < SERIES_THRESHOLD:
        return _poly_in_square(_DL_SERIES, x * x)
    inv = 1.0 / ax
    if ax > SATURATION_THRESHOLD:
        return inv * inv
    csch = 1.0 / math.sinh(ax)
    return (inv - csch) * (inv + csch)


def inv_langevin_pade(y: float) -> float:
    """Closed-form approximation to the inverse Langevin function.

    With tau = tan(pi*y/2),

        x ~ (6/pi) * tau * (1 + b_n tau**2) / (1 + b_d tau**2)

    where b_d = (20 pi^2 - 144) / (pi^2 (60 - 5 pi^2)) and b_n = (pi^2/12) b_d.
    The approximation matches L^-1 to leading order at y -> 0 and y -> +-1;
    its relative error is about 0.3% over the whole interval.

    Raises
    ------
    DomainError
        If ``|y| >= 1`` or ``y`` is not finite.
    """
    y = _check_finite(y)
    if abs(y) >= 1.0:
        raise DomainError(f"inverse Langevin needs |y| < 1, got {y!r}")
    if y == 0.0:
        return 0.0
    ay = abs(y)
    if ay <= 0.5:
        tau = math.tan(0.5 * math.pi * ay)
    else:
        # 1 - ay is exact here; cot keeps precision as ay -> 1
        tau = 1.0 / math.tan(0.5 * math.pi * (1.0 - ay))
    if tau <= 1.0:
        t2 = tau * tau
        ratio = (1.0 + PADE_BN * t2) / (1.0 + PADE_BD * t2)
    else:
        it2 = 1.0 / (tau * tau)
        ratio = (it2 + PADE_BN) / (it2 + PADE_BD)
    return math.copysign(6.0 / math.pi * tau * ratio, y)


def _one_minus_langevin(x: float) -> float:
    # 1 - L(x) for x > 1 without rounding L(x) near 1 first
    if x > SATURATION_THRESHOLD:
        return 1.0 / x
    return 1.0 / x - 2.0 / math.expm1(2.0 * x)


def solve_inv_langevin(y: float, tol: InverseTolerance = DEFAULT_TOLERANCE) -> InverseResult:
    """Solve L(x) = y by safeguarded Newton iteration.

    The iteration starts from :func:`inv_langevin_pade` and keeps a bracket
    [lo, hi] around the root; any Newton step that leaves the bracket is
    replaced by bisection. It stops once the step or the residual drops
    below ``tol.abs_tol``.

    Returns
    -------
    InverseResult
        Root, number of Newton/bisection steps taken and the final residual.

    Raises
    ------
    DomainError
        If ``|y| >= 1``.
    ConvergenceError
        If ``tol.max_iter`` steps are not enough.
    """
    y = _check_finite(y)
    if abs(y) >= 1.0:
        raise DomainError(f"inverse Langevin needs |y| < 1, got {y!r}")
    if y == 0.0:
        return InverseResult(0.0, 0, 0.0)

    # Work on |y| and restore the sign at the end; L is odd.
    t = abs(y)
    x = inv_langevin_pade(t)
    # L(x) > 1 - 1/x for x > 0, so the root is below 1/(1 - t).
    lo, hi = 0.5 * x, 2.0 / (1.0 - t)
    if langevin(lo) > t:
        lo = 0.0
    if not lo < x < hi:
        x = 0.5 * (lo + hi)

    if t > 0.5:
        # residual as (1 - t) - (1 - L(x)); both sides are exact/accurate
        # where L(x) - t would lose everything to rounding near 1
        one_minus_t = 1.0 - t

        def residual(z):
            return one_minus_t - _one_minus_langevin(z)
    else:
        def residual(z):
            return langevin(z) - t

    r = residual(x)
    iterations = 0
    while True:
        if r > 0.0:
            hi = x
        elif r < 0.0:
            lo = x
        else:
            break
        x_new = x - r / langevin_derivative(x)
        if abs(r) < tol.abs_tol:
            # one last Newton correction is free and only sharpens the root
            if lo <= x_new <= hi:
                x, r = x_new, residual(x_new)
            break
        if iterations >= tol.max_iter:
            raise ConvergenceError(
                f"inverse Langevin did not converge for y={y!r} "
                f"after {iterations} iterations (residual {r:.3e})",
                x=math.copysign(x, y), residual=r, iterations=iterations,
            )
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        step = abs(x_new - x)
        x = x_new
        r = residual(x)
        iterations += 1
        if step < tol.abs_tol:
            break

    return InverseResult(math.copysign(x, y), iterations, abs(r))


def inv_langevin(y: float, tol: InverseTolerance = DEFAULT_TOLERANCE) -> float:
    """Inverse Langevin function: the unique x with L(x) = y, for |y| < 1."""
    return solve_inv_langevin(y, tol).x
