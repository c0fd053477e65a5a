"""Exact binomials and explicit Stirling lower bounds packaged as certificates."""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import iv, mp, mpf

from .entropy import binary_entropy
from .errors import CertificateViolation, DomainError, InfeasibleKError
from .precision import as_fraction, hi, ivdps, lo, to_mpf

CERT_DPS = 40


def binomial_exact(q: int, k: int) -> int:
    """C(q, k) by the multiplicative formula; 0 outside 0 <= k <= q."""
    if k < 0 or k > q:
        return 0
    k = min(k, q - k)
    result = 1
    for i in range(k):
        # each partial product is C(q, i+1), so the division is exact
        result = result * (q - i) // (i + 1)
    return result


def _log_stirling(n, ctx):
    return ctx.log(2 * ctx.pi) / 2 + (n + ctx.mpf(1) / 2) * ctx.log(n) - n


def factorial_bounds(n: int, dps: int = CERT_DPS) -> tuple[mpf, mpf]:
    """Robbins-type bracket sqrt(2 pi) n^(n+1/2) e^-n <= n! <= same * e^(1/(12n)).

    Evaluated in log space and exponentiated once, so large n cannot overflow.
    """
    if n < 1:
        raise DomainError(f"factorial_bounds requires n >= 1, got {n}")
    with mp.workdps(dps):
        log_lower = _log_stirling(mpf(n), mp)
        lower = mp.exp(log_lower)
        upper = mp.exp(log_lower + mpf(1) / (12 * n))
    return lower, upper


@dataclass(frozen=True)
class StirlingCertificate:
    q: int
    k: int
    exact_value: int
    lower_bound: mpf
    entropy_at_ratio: mpf
    correction_factor: mpf
    prefactor: mpf
    enclosure: tuple[mpf, mpf]

    @property
    def ratio(self):
        """lower_bound / exact_value."""
        with mp.workdps(CERT_DPS):
            return self.lower_bound / self.exact_value


def entropy_lower_bound(q: int, k: int, dps: int = CERT_DPS) -> StirlingCertificate:
    """Certificate for C(q,k) >= (2 pi)^(-1/2) sqrt(q/(k(q-k))) exp(q H(k/q)) exp(-1/(12k) - 1/(12(q-k))).

    The bound is evaluated as an outward-rounded interval; its upper endpoint
    must not exceed the exact binomial.
    """
    if not (1 <= k <= q - 1):
        raise DomainError(f"entropy_lower_bound requires 1 <= k <= q-1, got q={q}, k={k}")
    exact = binomial_exact(q, k)
    with ivdps(dps), mp.workdps(dps):
        Q, K, R = iv.mpf(q), iv.mpf(k), iv.mpf(q - k)
        log_pref = (iv.log(Q) - iv.log(K) - iv.log(R) - iv.log(2 * iv.pi)) / 2
        log_main = Q * binary_entropy(K / Q)
        log_corr = -1 / (12 * K) - 1 / (12 * R)
        bound = iv.exp(log_pref + log_main + log_corr)
        pref = iv.exp(log_pref)
        corr = iv.exp(log_corr)
        ent = binary_entropy(K / Q)
        encl = (lo(bound), hi(bound))
        fields = [(lo(v) + hi(v)) / 2 for v in (bound, ent, corr, pref)]
    cert = StirlingCertificate(q, k, exact, *fields, enclosure=encl)
    if not cert.enclosure[1] <= exact:
        raise CertificateViolation(
            f"Stirling bound {cert.enclosure[1]} exceeds C({q},{k}) = {exact}"
        )
    return cert


def nearest_k(x, q: int) -> int:
    """Integer k in [1, q-1] nearest to xq with |k - xq| <= 2 (ties downward)."""
    target = as_fraction(x) * q
    candidates = [k for k in range(1, q) if abs(k - target) <= 2]
    if not candidates:
        raise InfeasibleKError(f"no integer k in [1, {q - 1}] with |k - {float(target)}| <= 2")
    return min(candidates, key=lambda k: (abs(k - target), k))


def asymptotic_constant_check(x, q_list, dps: int = CERT_DPS) -> list[tuple[int, mpf]]:
    """Ratios C(q,k) sqrt(q) / exp(q H(x)) along q_list; an empirical c_x."""
    rows = []
    with mp.workdps(dps):
        h = binary_entropy(to_mpf(x))
        for q in q_list:
            if q < 2:
                raise DomainError(f"q must be >= 2, got {q}")
            k = nearest_k(x, q)
            rows.append((q, binomial_exact(q, k) * mp.sqrt(q) / mp.exp(q * h)))
    return rows


def exponent_shift_factor(x, q: int, k: int, dps: int = CERT_DPS) -> mpf:
    """exp(q H(k/q)) / exp(q H(x)), the price of rounding xq to an integer k."""
    with mp.workdps(dps):
        return mp.exp(q * (binary_entropy(mpf(k) / q) - binary_entropy(to_mpf(x))))
