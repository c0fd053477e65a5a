"""Parameter selection for the fibre-surface construction at a concrete genus.

Given (g, alpha, epsilon) the planner picks the ratio x, the slacks eta and
delta, then q, k, p, and evaluates every finite-g side condition the
asymptotic argument relies on.  Integers and chosen parameters are exact
(``int`` / ``Fraction``); logarithms go through outward-rounded intervals.

Two groups of side conditions are reported:

* certificate conditions (embedding, M > m) are all the certified crossing
  bound needs, and decide feasibility;
* asymptotic-chain conditions (q <= delta g, ...) are what it takes for the
  bound to also sit under the closed-form constant chain ending at
  C_star + epsilon.  They are reported, and ``overall_feasible`` requires both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from mpmath import iv, mp, mpf

from .entropy import binary_entropy, solve_entropy_minimum, symmetric_constant
from .errors import DomainError, InfeasiblePlanError, PlanError
from .family import FamilySpec, embedding_check, family_size
from .precision import (
    as_fraction,
    ceil_exact,
    certainly_le,
    hi,
    ivdps,
    lo,
    power_floor,
    to_interval,
)

MODES = ("optimized", "symmetric")
PLAN_DPS = 40
SOLVER_TOLERANCE = 1e-12
ETA_STEPS = 64
ETA_RATIO = "0.917004043204671"  # 2**(-1/8)
MAX_CEIL_ESCALATIONS = 4

BJP_UPPER = Fraction(9, 4)
BJP_LOWER = Fraction(1, 257)

CERTIFICATE = "certificate"
ASYMPTOTIC = "asymptotic"


def _check_mode(mode):
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")


def _positive(value, name):
    v = as_fraction(value)
    if v <= 0:
        raise DomainError(f"{name} must be > 0, got {value}")
    return v


def choose_ratio(epsilon, mode="optimized") -> Fraction:
    """x = the entropy minimiser (optimized) or 1/2 (symmetric)."""
    _positive(epsilon, "epsilon")
    _check_mode(mode)
    if mode == "symmetric":
        return Fraction(1, 2)
    return as_fraction(solve_entropy_minimum(SOLVER_TOLERANCE).x0)


def _inv_entropy(x):
    return 1 / binary_entropy(to_interval(x))


def eta_condition(x, eta, epsilon):
    """Both sides of 2x (1/H + eta)^2 <= 2x/H^2 + epsilon/4, as intervals."""
    X, E = to_interval(x), to_interval(epsilon)
    inv_h = _inv_entropy(x)
    lhs = 2 * X * (inv_h + to_interval(eta)) ** 2
    rhs = 2 * X * inv_h**2 + E / 4
    return lhs, rhs


def delta_condition(x, eta, delta, epsilon):
    """Both sides of (1+d)(2+4d)(x+d)(1/H+eta+d)^2 <= 2x(1/H+eta)^2 + epsilon/4."""
    X, N, D, E = (to_interval(v) for v in (x, eta, delta, epsilon))
    inv_h = _inv_entropy(x)
    lhs = (1 + D) * (2 + 4 * D) * (X + D) * (inv_h + N + D) ** 2
    rhs = 2 * X * (inv_h + N) ** 2 + E / 4
    return lhs, rhs


def eta_boundary(x, epsilon, dps=PLAN_DPS) -> mpf:
    """The eta at which the eta inequality becomes an equality."""
    with ivdps(dps), mp.workdps(dps):
        X, E = to_interval(x), to_interval(epsilon)
        inv_h = _inv_entropy(x)
        top = iv.sqrt((2 * X * inv_h**2 + E / 4) / (2 * X)) - inv_h
        return (lo(top) + hi(top)) / 2


def choose_eta(x, epsilon, dps=PLAN_DPS) -> Fraction:
    """Largest eta on a geometric grid below the boundary that passes outward-rounded."""
    x, epsilon = as_fraction(x), _positive(epsilon, "epsilon")
    top = eta_boundary(x, epsilon, dps)
    with ivdps(dps), mp.workdps(dps):
        ratio = mpf(ETA_RATIO)
        j = 0
        while True:
            step = ratio**j if j <= ETA_STEPS else ratio**ETA_STEPS / 2 ** (j - ETA_STEPS)
            cand = as_fraction(top * step)
            if cand > 0 and certainly_le(*eta_condition(x, cand, epsilon)):
                return cand
            j += 1


def choose_delta(x, eta, epsilon, dps=PLAN_DPS) -> Fraction:
    """Largest delta = 2^-j < 1/2 satisfying the delta inequality outward-rounded."""
    x, eta, epsilon = as_fraction(x), as_fraction(eta), _positive(epsilon, "epsilon")
    with ivdps(dps):
        j = 2
        while True:
            delta = Fraction(1, 2**j)
            if certainly_le(*delta_condition(x, eta, delta, epsilon)):
                return delta
            j += 1


def nearest_odd_k(x, q: int) -> int:
    """Odd integer nearest to xq; of two equidistant candidates the smaller."""
    c = as_fraction(x) * q
    f = math.floor(c)
    k_low = f if f % 2 else f - 1
    k_high = k_low + 2
    k = k_low if c - k_low <= k_high - c else k_high
    if not 1 <= k <= q:
        raise PlanError(f"odd k={k} nearest to xq={float(c)} lies outside [1, {q}]")
    return k


def admissible_odd_ks(x, q: int) -> list[int]:
    c = as_fraction(x) * q
    return [k for k in range(1, q + 1, 2) if abs(k - c) <= 2]


def q_from_formula(x, eta, alpha, g, dps=PLAN_DPS) -> int:
    """ceil((1/H(x) + eta) alpha ln g), certified by precision escalation."""
    for attempt in range(MAX_CEIL_ESCALATIONS + 1):
        with ivdps(dps * 2**attempt):
            v = (_inv_entropy(x) + to_interval(eta)) * to_interval(alpha) * iv.log(iv.mpf(g))
            c_lo, c_hi = ceil_exact(lo(v)), ceil_exact(hi(v))
        if c_lo == c_hi:
            return c_lo
    raise PlanError(f"could not certify the ceiling defining q (enclosure {v})")


@dataclass(frozen=True)
class ConstructionPlan:
    g: int
    alpha: Fraction
    epsilon: Fraction
    mode: str
    x: Fraction
    eta: Fraction
    delta: Fraction
    q: int
    k: int
    p: int
    m: int
    M: int
    q_formula: int
    searched: bool = False

    @property
    def family(self) -> FamilySpec:
        return FamilySpec(self.p, self.q, self.k)


@dataclass(frozen=True)
class SideCondition:
    name: str
    inequality: str
    lhs: object
    rhs: object
    verdict: bool
    role: str


@dataclass(frozen=True)
class SideConditionReport:
    conditions: tuple[SideCondition, ...]
    precision: int

    @property
    def certificate_feasible(self) -> bool:
        return all(c.verdict for c in self.conditions if c.role == CERTIFICATE)

    @property
    def overall_feasible(self) -> bool:
        return all(c.verdict for c in self.conditions)

    def __getitem__(self, name) -> SideCondition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


def evaluate_side_conditions(plan: ConstructionPlan, dps=PLAN_DPS) -> SideConditionReport:
    g, q, k, p, m, M = plan.g, plan.q, plan.k, plan.p, plan.m, plan.M
    x, eta, delta, alpha = plan.x, plan.eta, plan.delta, plan.alpha
    emb = embedding_check(p, q, g)
    rows = [
        SideCondition("embedding", "|p + q - pq| <= 2g - 2", abs(emb.euler_characteristic),
                      2 * g - 2, emb.fits, CERTIFICATE),
        SideCondition("family_exceeds_m", "M > m", M, m, M > m, CERTIFICATE),
        SideCondition("q_le_delta_g", "q <= delta*g", q, delta * g, q <= delta * g, ASYMPTOTIC),
        SideCondition("p_minus_1_ge_g_over_q", "p - 1 >= g/q", p - 1, Fraction(g, q),
                      p - 1 >= Fraction(g, q), ASYMPTOTIC),
        SideCondition("m_ge_inv_delta", "m >= 1/delta", m, 1 / delta, m >= 1 / delta, ASYMPTOTIC),
        SideCondition("q_ge_2_over_delta", "q >= 2/delta", q, 2 / delta, q >= 2 / delta, ASYMPTOTIC),
        SideCondition("k_le_x_plus_delta_q", "k <= (x + delta)*q", k, (x + delta) * q,
                      k <= (x + delta) * q, ASYMPTOTIC),
    ]
    with ivdps(dps), mp.workdps(dps):
        log_g = iv.log(iv.mpf(g))
        scale = to_interval(delta) * to_interval(alpha) * log_g
        rows.append(SideCondition("log_scale", "1 <= delta*alpha*ln g", 1, lo(scale),
                                  certainly_le(1, scale), ASYMPTOTIC))
        q_cap = (_inv_entropy(x) + to_interval(eta) + to_interval(delta)) * to_interval(alpha) * log_g
        rows.append(SideCondition("q_le_scaled_log", "q <= (1/H(x) + eta + delta)*alpha*ln g", q,
                                  lo(q_cap), certainly_le(q, q_cap), ASYMPTOTIC))
    return SideConditionReport(tuple(rows), dps)


@dataclass(frozen=True)
class Choices:
    x: Fraction
    eta: Fraction
    delta: Fraction
    q_formula: int
    m: int


def _choices(g, alpha, epsilon, mode, dps) -> Choices:
    x = choose_ratio(epsilon, mode)
    eta = choose_eta(x, epsilon, dps)
    delta = choose_delta(x, eta, epsilon, dps)
    q = q_from_formula(x, eta, alpha, g, dps)
    floor = power_floor(g, alpha, dps)
    if not floor.certified:
        raise PlanError(f"floor of {floor.input_expression} stayed ambiguous")
    return Choices(x, eta, delta, q, floor.value)


def _validate(g, alpha, epsilon, mode):
    if not isinstance(g, int) or g < 3:
        raise DomainError(f"g must be an integer >= 3, got {g}")
    _check_mode(mode)
    return _positive(alpha, "alpha"), _positive(epsilon, "epsilon")


def _assemble(g, alpha, epsilon, mode, ch: Choices, q, k, searched):
    p = (2 * g - 2) // (q - 1) + 1
    M = family_size(FamilySpec(p, q, k))
    return ConstructionPlan(g, alpha, epsilon, mode, ch.x, ch.eta, ch.delta, q, k, p,
                            ch.m, M, ch.q_formula, searched)


def build_plan(g, alpha, epsilon, mode="optimized", dps=PLAN_DPS):
    """Run the parameter chain once, exactly as defined; returns (plan, report)."""
    alpha, epsilon = _validate(g, alpha, epsilon, mode)
    ch = _choices(g, alpha, epsilon, mode, dps)
    q = ch.q_formula
    if q < 2:
        raise PlanError(f"q = {q} < 2: alpha*ln g is too small for any family")
    k = nearest_odd_k(ch.x, q)
    plan = _assemble(g, alpha, epsilon, mode, ch, q, k, searched=False)
    return plan, evaluate_side_conditions(plan, dps)


def feasibility_search(g, alpha, epsilon, mode="optimized", dps=PLAN_DPS):
    """First plan with M > m, scanning q upward from the formula value.

    For each q, the admissible odd k (|k - xq| <= 2) are tried in increasing
    order, so the plan returned has the minimal feasible q and, for that q,
    the smallest feasible k.  The scan stops at q = floor(delta*g).  When
    nothing qualifies the formula plan is returned with its failing report.
    """
    alpha, epsilon = _validate(g, alpha, epsilon, mode)
    ch = _choices(g, alpha, epsilon, mode, dps)
    base = None
    if ch.q_formula >= 2:
        try:
            base = _assemble(g, alpha, epsilon, mode, ch, ch.q_formula,
                             nearest_odd_k(ch.x, ch.q_formula), searched=False)
        except PlanError:
            base = None
    if base is not None:
        report = evaluate_side_conditions(base, dps)
        if report.certificate_feasible:
            return base, report
    q_max = math.floor(ch.delta * g)
    for q in range(max(ch.q_formula, 2), q_max + 1):
        p = (2 * g - 2) // (q - 1) + 1
        for k in admissible_odd_ks(ch.x, q):
            M = (p - 1) * math.comb(q, k)
            if M > ch.m and embedding_check(p, q, g):
                plan = _assemble(g, alpha, epsilon, mode, ch, q, k, searched=True)
                return plan, evaluate_side_conditions(plan, dps)
    if base is None:
        raise PlanError(f"no admissible plan at g={g}: formula q={ch.q_formula}, delta*g={float(ch.delta * g)}")
    return base, evaluate_side_conditions(base, dps)


def plan(g, alpha, epsilon, mode="optimized", search=False, dps=PLAN_DPS):
    return (feasibility_search if search else build_plan)(g, alpha, epsilon, mode, dps)


@dataclass(frozen=True)
class CertifiedBound:
    crossing_bound: int
    leading_constant: mpf
    target_constant: mpf
    baseline_symmetric: mpf
    baseline_bjp: Fraction
    bjp_lower_constant: Fraction
    relaxed_bound: Fraction
    chain_constant: mpf
    chain_established: bool
    subset_factor_ok: bool


def exact_subset_bound(plan: ConstructionPlan) -> Fraction:
    """4k m(m-1) M / ((p-1)(M-1))."""
    k, m, M, p = plan.k, plan.m, plan.M, plan.p
    return Fraction(4 * k * m * (m - 1) * M, (p - 1) * (M - 1))


def normalizer(g, alpha):
    """Interval for alpha^2 g^(1+2 alpha) (ln g)^2 at the current precision."""
    A = to_interval(alpha)
    log_g = iv.log(iv.mpf(g))
    return A**2 * iv.exp((1 + 2 * A) * log_g) * log_g**2


def certified_bound(plan: ConstructionPlan, report: SideConditionReport | None = None,
                    dps=PLAN_DPS) -> CertifiedBound:
    """Certified upper bound on Cr(g, m) for a feasible plan.

    ``leading_constant`` is the upper endpoint of the outward-rounded quotient,
    so it never understates the constant.
    """
    report = report or evaluate_side_conditions(plan, dps)
    if not report.certificate_feasible:
        failed = [c.name for c in report.conditions if c.role == CERTIFICATE and not c.verdict]
        raise InfeasiblePlanError(f"plan fails {', '.join(failed)}")
    bound = math.ceil(exact_subset_bound(plan))
    relaxed = (1 + plan.delta) * Fraction(4 * plan.k, plan.p - 1) * plan.m**2
    c_star = solve_entropy_minimum(SOLVER_TOLERANCE).c_star
    with ivdps(dps), mp.workdps(dps):
        leading = hi(iv.mpf(bound) / normalizer(plan.g, plan.alpha))
        X, N, D = (to_interval(v) for v in (plan.x, plan.eta, plan.delta))
        chain = (1 + D) * (2 + 4 * D) * (X + D) * (_inv_entropy(plan.x) + N + D) ** 2
        target = c_star + mpf(plan.epsilon.numerator) / plan.epsilon.denominator
        return CertifiedBound(
            crossing_bound=bound,
            leading_constant=leading,
            target_constant=target,
            baseline_symmetric=symmetric_constant(dps),
            baseline_bjp=BJP_UPPER,
            bjp_lower_constant=BJP_LOWER,
            relaxed_bound=relaxed,
            chain_constant=hi(chain),
            chain_established=report.overall_feasible,
            subset_factor_ok=Fraction(plan.M, plan.M - 1) <= 1 + Fraction(1, plan.m),
        )


@dataclass(frozen=True)
class StudyRow:
    g: int
    feasible: bool
    q: int | None
    k: int | None
    p: int | None
    leading_constant: mpf | None
    chain_established: bool
    note: str = ""


@dataclass(frozen=True)
class ConvergenceStudy:
    alpha: Fraction
    epsilon: Fraction
    mode: str
    rows: tuple[StudyRow, ...]
    trend_max: mpf | None = None
    final_constant: mpf | None = None
    final_meets_target: bool | None = None
    target_constant: mpf | None = field(default=None)

    @property
    def feasible_rows(self):
        return [r for r in self.rows if r.feasible]


def study_row(g, alpha, epsilon, mode, search=True, dps=PLAN_DPS) -> StudyRow:
    try:
        pl, rep = plan(g, alpha, epsilon, mode, search, dps)
    except PlanError as exc:
        return StudyRow(g, False, None, None, None, None, False, str(exc))
    if not rep.certificate_feasible:
        return StudyRow(g, False, pl.q, pl.k, pl.p, None, False, "M <= m")
    cb = certified_bound(pl, rep, dps)
    return StudyRow(g, True, pl.q, pl.k, pl.p, cb.leading_constant, cb.chain_established)


def convergence_study(alpha, epsilon, g_list, mode="optimized", search=True, dps=PLAN_DPS):
    """Leading constants along an increasing genus list."""
    g_list = list(g_list)
    if not g_list or any(b <= a for a, b in zip(g_list, g_list[1:])):
        raise DomainError("g_list must be a nonempty increasing list")
    alpha, epsilon = _positive(alpha, "alpha"), _positive(epsilon, "epsilon")
    rows = tuple(study_row(g, alpha, epsilon, mode, search, dps) for g in g_list)
    study = ConvergenceStudy(alpha, epsilon, mode, rows)
    feas = study.feasible_rows
    if not feas:
        return study
    tail = feas[-max(1, len(feas) // 3):]
    with mp.workdps(dps):
        target = solve_entropy_minimum(SOLVER_TOLERANCE).c_star + mp.mpf(epsilon.numerator) / epsilon.denominator
    final = feas[-1].leading_constant
    return replace(study, trend_max=max(r.leading_constant for r in tail), final_constant=final,
                   final_meets_target=bool(final <= target), target_constant=target)
