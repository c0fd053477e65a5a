"""Outward-rounded interval helpers, certified logarithms and certified floors.

Interval work goes through ``mpmath.iv``; :func:`ivdps` scopes its working
precision the way ``mp.workdps`` does for plain mpf arithmetic.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from mpmath import iv, mp, mpf

from .errors import DomainError

DEFAULT_FLOOR_DPS = 40
MAX_ESCALATIONS = 4

CERTIFIED = "certified"
AMBIGUOUS = "ambiguous"

_IV_TYPE = type(iv.mpf(1))


@contextmanager
def ivdps(dps):
    saved = iv.prec
    iv.dps = dps
    try:
        yield
    finally:
        iv.prec = saved


def as_fraction(value) -> Fraction:
    """Exact rational for a user-supplied number.

    Floats are read through their shortest repr, so 0.2 means 1/5 rather than
    the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value}")
        return Fraction(repr(value))
    if isinstance(value, (str, Decimal)):
        return Fraction(value)
    if isinstance(value, mpf):
        man, exp = value.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def to_mpf(value) -> mpf:
    """``value`` as an mpf rounded at the current mp precision."""
    if isinstance(value, mpf):
        return +value
    frac = as_fraction(value)
    return mpf(frac.numerator) / frac.denominator


def to_interval(value):
    """Enclosure of ``value`` at the current interval precision."""
    if isinstance(value, _IV_TYPE):
        return value
    if isinstance(value, mpf):
        value = as_fraction(value)
    frac = as_fraction(value)
    if frac.denominator == 1:
        return iv.mpf(frac.numerator)
    return iv.mpf(frac.numerator) / iv.mpf(frac.denominator)


def lo(x) -> mpf:
    with mp.workprec(max(iv.prec, mp.prec) + 10):
        return mpf(x.a._mpi_[0])


def hi(x) -> mpf:
    with mp.workprec(max(iv.prec, mp.prec) + 10):
        return mpf(x.b._mpi_[1])


def certainly_le(a, b) -> bool:
    """True only if every point of ``a`` is <= every point of ``b``."""
    return hi(to_interval(a)) <= lo(to_interval(b))


def certainly_lt(a, b) -> bool:
    return hi(to_interval(a)) < lo(to_interval(b))


def floor_exact(x: mpf) -> int:
    return math.floor(as_fraction(x))


def ceil_exact(x: mpf) -> int:
    return math.ceil(as_fraction(x))


def ln_hp(x, precision: int = 30):
    """Interval enclosing ln x, of width at most 10^(2 - precision)."""
    frac = as_fraction(x) if not isinstance(x, _IV_TYPE) else None
    if frac is not None and frac <= 0:
        raise DomainError(f"ln_hp requires x > 0, got {x}")
    if frac == 1:
        return iv.mpf(0)
    # extra digits absorb the magnitude of ln x for x up to ~1e300
    with ivdps(precision + 5):
        return iv.log(to_interval(x))


def iroot(n: int, b: int) -> int:
    """Largest r with r**b <= n, by integer Newton iteration."""
    if n < 0 or b < 1:
        raise DomainError("iroot requires n >= 0 and b >= 1")
    if n < 2 or b == 1:
        return n
    r = 1 << -(-n.bit_length() // b)
    while True:
        s = ((b - 1) * r + n // r ** (b - 1)) // b
        if s >= r:
            break
        r = s
    while r**b > n:
        r -= 1
    while (r + 1) ** b <= n:
        r += 1
    return r


@dataclass(frozen=True)
class CertifiedFloor:
    value: int
    input_expression: str
    certainty: str
    working_precision: int

    @property
    def certified(self) -> bool:
        return self.certainty == CERTIFIED


def _exact_power(g: int, exponent: Fraction):
    """g**exponent when it is an integer, else None.

    With gcd(a, b) = 1, g**(a/b) is rational only if g is a perfect b-th power,
    which needs b <= log2(g).
    """
    a, b = exponent.numerator, exponent.denominator
    if b == 1:
        return g**a
    if b > g.bit_length():
        return None
    r = iroot(g, b)
    return r**a if r**b == g else None


def power_floor(g: int, alpha, precision: int = DEFAULT_FLOOR_DPS) -> CertifiedFloor:
    """Certified floor of g^(1+alpha).

    Exact rational powers are detected by integer roots.  Otherwise the power
    is enclosed by interval arithmetic, doubling precision up to four times
    while the enclosure straddles an integer.
    """
    if g < 2:
        raise DomainError(f"power_floor requires g >= 2, got {g}")
    if precision < 20:
        raise DomainError(f"precision must be >= 20, got {precision}")
    a = as_fraction(alpha)
    if a < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    expr = f"{g}^(1+{alpha})"
    exponent = 1 + a
    exact = _exact_power(g, exponent)
    if exact is not None:
        return CertifiedFloor(exact, expr, CERTIFIED, precision)
    dps = precision
    for _ in range(MAX_ESCALATIONS + 1):
        with ivdps(dps):
            enclosure = iv.exp(to_interval(exponent) * iv.log(iv.mpf(g)))
            f_lo, f_hi = floor_exact(lo(enclosure)), floor_exact(hi(enclosure))
        if f_lo == f_hi:
            return CertifiedFloor(f_lo, expr, CERTIFIED, dps)
        dps *= 2
    return CertifiedFloor(f_lo, expr, AMBIGUOUS, dps // 2)
