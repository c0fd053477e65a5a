"""Binary entropy, the objective f(x) = 2x / H(x)^2, and its minimiser.

Every function accepts a native float, an ``mpmath.mpf`` or an ``mpmath.iv``
interval and evaluates in the matching arithmetic, so the same code serves
quick float work, 50+ digit evaluation and outward-rounded enclosures.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import iv, mp, mpf

from . import kernels
from .errors import ConvergenceError, DomainError

OBJECTIVE_FLOOR = 1e-12
INITIAL_BRACKET = ("0.1", "0.4")
GRID_STEP = Fraction(1, 10_000)
GRID_POINTS = 5000  # covers (0, 1/2] at GRID_STEP
MIN_DPS = 50

_IV_TYPE = type(iv.mpf(1))


def _lib(x):
    if isinstance(x, _IV_TYPE):
        return iv
    if isinstance(x, mpf):
        return mp
    return math


def _bounds(x):
    if isinstance(x, _IV_TYPE):
        return x.a, x.b
    return x, x


def _check_open_unit(x, name):
    lo, hi = _bounds(x)
    if not (lo > 0 and hi < 1):
        raise DomainError(f"{name} requires 0 < x < 1, got {x}")


def binary_entropy(x):
    """H(x) = -x ln x - (1-x) ln(1-x), in nats."""
    _check_open_unit(x, "binary_entropy")
    log = _lib(x).log
    return -x * log(x) - (1 - x) * log(1 - x)


def entropy_derivative(x):
    """H'(x) = ln((1-x)/x)."""
    _check_open_unit(x, "entropy_derivative")
    return _lib(x).log((1 - x) / x)


def objective(x):
    """f(x) = 2x / H(x)^2 on (0, 1/2].

    Values below 1e-12 are refused; f diverges there and is never needed.
    """
    lo, hi = _bounds(x)
    if not (lo >= OBJECTIVE_FLOOR and hi <= 0.5):
        raise DomainError(f"objective requires {OBJECTIVE_FLOOR} <= x <= 1/2, got {x}")
    h = binary_entropy(x)
    return 2 * x / (h * h)


def objective_derivative(x):
    lo, hi = _bounds(x)
    if not (lo >= OBJECTIVE_FLOOR and hi <= 0.5):
        raise DomainError(f"objective_derivative requires {OBJECTIVE_FLOOR} <= x <= 1/2, got {x}")
    h = binary_entropy(x)
    return 2 / h**2 - 4 * x * entropy_derivative(x) / h**3


def critical_residual(x):
    """x ln x - (1+x) ln(1-x); vanishes at interior critical points of f."""
    _check_open_unit(x, "critical_residual")
    log = _lib(x).log
    return x * log(x) - (1 + x) * log(1 - x)


def critical_residual_entropy_form(x):
    """H(x) - 2x H'(x), the unsimplified form of the same condition."""
    return binary_entropy(x) - 2 * x * entropy_derivative(x)


def symmetric_constant(dps=MIN_DPS):
    """f(1/2) = 1/(ln 2)^2."""
    with mp.workdps(dps):
        return 1 / mp.log(2) ** 2


def brent_root(func, a, b, xtol, eps=sys.float_info.epsilon, maxiter=300):
    """Bracketed Brent-Dekker root finder; works for floats and mpf alike."""
    fa, fb = func(a), func(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise ConvergenceError(
            f"residual does not change sign on bracket [{a}, {b}]: f(a)={fa}, f(b)={fb}"
        )
    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2 * eps * abs(b) + xtol / 2
        xm = (c - b) / 2
        if abs(xm) <= tol1 or fb == 0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2 * xm * s
                q = 1 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1))
                q = (q - 1) * (r - 1) * (s - 1)
            if p > 0:
                q = -q
            p = abs(p)
            if 2 * p < min(3 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b = b + (d if abs(d) > tol1 else (tol1 if xm > 0 else -tol1))
        fb = func(b)
    raise ConvergenceError(f"no convergence after {maxiter} iterations; bracket [{b}, {c}]")


@dataclass(frozen=True)
class EntropySolution:
    x0: mpf
    c_star: mpf
    f_half: mpf
    residual: mpf
    precision: float
    working_dps: int


def _dps_for(tolerance):
    return max(MIN_DPS, int(-math.log10(tolerance)) + 30)


def solve_entropy_minimum(tolerance=1e-10, bracket=INITIAL_BRACKET):
    """Locate the minimiser of f on (0, 1/2] and the optimised constant.

    The root of :func:`critical_residual` is bracketed on ``bracket`` and
    refined far below ``tolerance``.  Second-order optimality is checked at
    x0 +/- tolerance and global minimality by a grid scan of step 1e-4.
    """
    if not (0 < tolerance <= 1e-3):
        raise DomainError(f"tolerance must lie in (0, 1e-3], got {tolerance}")
    return _solve(float(tolerance), tuple(str(b) for b in bracket))


@lru_cache(maxsize=32)
def _solve(tolerance, bracket):
    dps = _dps_for(tolerance)
    with mp.workdps(dps):
        lo, hi = mpf(bracket[0]), mpf(bracket[1])
        x0 = brent_root(critical_residual, lo, hi, xtol=mpf(10) ** (10 - dps), eps=mp.eps)
        c_star = objective(x0)
        f_half = objective(mpf(1) / 2)
        residual = critical_residual(x0)
        tol = mpf(tolerance)
        if abs(residual) > tol:
            raise ConvergenceError(f"residual {residual} exceeds tolerance {tolerance}")
        if not (objective(x0 - tol) > c_star and objective(x0 + tol) > c_star):
            raise ConvergenceError(f"x0={x0} is not a local minimum at scale {tolerance}")
        if not c_star <= f_half:
            raise ConvergenceError("optimised value exceeds the symmetric value")
    i_min, f_min = kernels.objective_grid_min(GRID_POINTS, float(GRID_STEP))
    if f_min < float(c_star) - 1e-12:
        raise ConvergenceError(
            f"grid point x={i_min * float(GRID_STEP)} gives f={f_min} below f(x0)={float(c_star)}"
        )
    return EntropySolution(x0, c_star, f_half, residual, tolerance, dps)
