"""Combinatorial model of the curve family on the fibre surface of K_{p,q}.

A curve is a consecutive pair of upper vertices plus an odd-size subset of
the lower vertices; pairs of curves interact only through shared upper
vertices, and the per-pair intersection bounds are 0, 2k or 4k.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import kernels
from .combinatorics import binomial_exact
from .errors import BudgetExceeded, IdenticalCurveError, InvalidFamilyError, TopologyError

DEFAULT_CAP = 100_000
_MASK_BITS = 64


@dataclass(frozen=True)
class FamilySpec:
    p: int
    q: int
    k: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise InvalidFamilyError(f"need p >= 2 and q >= 2, got p={self.p}, q={self.q}")
        if not 1 <= self.k <= self.q:
            raise InvalidFamilyError(f"need 1 <= k <= q, got k={self.k}, q={self.q}")
        if self.k % 2 == 0:
            raise InvalidFamilyError(f"k must be odd for a connected boundary, got k={self.k}")


@dataclass(frozen=True, order=True)
class CurveSpec:
    upper_pair: int
    lower_subset: tuple[int, ...]

    @property
    def upper_vertices(self) -> frozenset[int]:
        return frozenset((self.upper_pair, self.upper_pair + 1))

    @property
    def lower_mask(self) -> int:
        return sum(1 << v for v in self.lower_subset)

    def check(self, spec: FamilySpec) -> None:
        if not 0 <= self.upper_pair <= spec.p - 2:
            raise InvalidFamilyError(f"upper_pair {self.upper_pair} outside [0, {spec.p - 2}]")
        sub = self.lower_subset
        if len(sub) != spec.k or any(a >= b for a, b in zip(sub, sub[1:])):
            raise InvalidFamilyError(f"lower_subset {sub} is not a sorted {spec.k}-subset")
        if sub and (sub[0] < 0 or sub[-1] >= spec.q):
            raise InvalidFamilyError(f"lower_subset {sub} leaves [0, {spec.q - 1}]")


@dataclass(frozen=True)
class PairClass:
    shared_upper: int
    intersection_bound: int


@dataclass(frozen=True)
class SurfaceTopology:
    euler_characteristic: int
    boundary_components: int
    genus: int


@dataclass(frozen=True)
class EmbeddingReport:
    fits: bool
    euler_characteristic: int
    slack: int

    def __bool__(self):
        return self.fits


def family_size(spec: FamilySpec) -> int:
    return (spec.p - 1) * binomial_exact(spec.q, spec.k)


def colex_masks(q: int, k: int) -> Iterator[int]:
    """k-subsets of range(q) as bitmasks in colex order (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    m = (1 << k) - 1
    limit = 1 << q
    while m < limit:
        yield m
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def _subset(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_cap(spec, cap):
    size = family_size(spec)
    if cap is not None and size > cap:
        raise BudgetExceeded(size, cap)
    return size


def enumerate_family(spec: FamilySpec, cap: int | None = DEFAULT_CAP) -> Iterator[CurveSpec]:
    """Every curve of the family, upper pair major and lower subset colex minor."""
    _check_cap(spec, cap)
    masks = list(colex_masks(spec.q, spec.k))
    subsets = [_subset(m) for m in masks]
    for i in range(spec.p - 1):
        for sub in subsets:
            yield CurveSpec(i, sub)


def _arrays(spec, cap):
    _check_cap(spec, cap)
    masks = list(colex_masks(spec.q, spec.k))
    n = len(masks)
    upper = array("q", (i for i in range(spec.p - 1) for _ in range(n)))
    if spec.q <= _MASK_BITS:
        lower = array("Q", masks * (spec.p - 1))
    else:
        lower = masks * (spec.p - 1)
    return upper, lower


def shared_upper_count(a: int, b: int) -> int:
    """|{a, a+1} & {b, b+1}| for consecutive upper pairs a and b."""
    return len({a, a + 1} & {b, b + 1})


def classify_pair(a: CurveSpec, b: CurveSpec, spec: FamilySpec) -> PairClass:
    a.check(spec)
    b.check(spec)
    if a == b:
        raise IdenticalCurveError(f"cannot classify a curve against itself: {a}")
    shared = shared_upper_count(a.upper_pair, b.upper_pair)
    return PairClass(shared, 2 * spec.k * shared)


def exact_pair_bound_sum(spec: FamilySpec, cap: int | None = DEFAULT_CAP, backend=None) -> int:
    """Sum of per-pair intersection bounds over all unordered pairs of curves."""
    impl = backend or kernels
    upper, _ = _arrays(spec, cap)
    n1, n2 = impl.pair_class_totals(upper)
    return 2 * spec.k * n1 + 4 * spec.k * n2


def classified_pair_bound_sum(spec: FamilySpec, cap: int | None = DEFAULT_CAP) -> int:
    """Same sum as :func:`exact_pair_bound_sum`, one classify_pair call per pair."""
    curves = list(enumerate_family(spec, cap))
    total = 0
    for i, a in enumerate(curves):
        for b in curves[i + 1:]:
            total += classify_pair(a, b, spec).intersection_bound
    return total


def closed_form_pair_bound_sum(spec: FamilySpec) -> int:
    c = binomial_exact(spec.q, spec.k)
    same_pair = (spec.p - 1) * math.comb(c, 2) * 4 * spec.k
    adjacent = (spec.p - 2) * c * c * 2 * spec.k
    return same_pair + adjacent


def lemma3_bound(spec: FamilySpec) -> Fraction:
    """4k M^2 / (p-1), an integer since (p-1) divides M."""
    m = family_size(spec)
    return Fraction(4 * spec.k * m * m, spec.p - 1)


def per_curve_bound(spec: FamilySpec) -> int:
    return 8 * spec.k * binomial_exact(spec.q, spec.k)


def neighbour_profile(spec: FamilySpec, cap: int | None = DEFAULT_CAP, backend=None):
    """Per-curve counts of other curves sharing exactly one / both upper vertices."""
    impl = backend or kernels
    upper, _ = _arrays(spec, cap)
    return impl.shared_upper_profile(upper)


def distinctness_check(spec: FamilySpec, cap: int | None = DEFAULT_CAP, backend=None) -> bool:
    """True iff every two curves differ in their used upper or lower vertices."""
    upper, lower = _arrays(spec, cap)
    impl = backend or kernels
    if not isinstance(lower, array):
        impl = kernels.python_backend
    return bool(impl.distinct_curves(upper, lower))


def surface_topology(p: int, q: int) -> SurfaceTopology:
    if p < 2 or q < 2:
        raise InvalidFamilyError(f"need p, q >= 2, got ({p}, {q})")
    chi = p + q - p * q
    b = math.gcd(p, q)
    twice_genus = 2 - chi - b
    if twice_genus < 0 or twice_genus % 2:
        raise TopologyError(f"chi={chi}, b={b} give non-integral genus")
    return SurfaceTopology(chi, b, twice_genus // 2)


def embedding_check(p: int, q: int, g: int) -> EmbeddingReport:
    """Whether |chi(Sigma(p,q))| <= 2g - 2, with the slack."""
    chi = p + q - p * q
    slack = 2 * g - 2 - abs(chi)
    return EmbeddingReport(slack >= 0, chi, slack)
