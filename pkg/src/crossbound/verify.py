"""Invariant suites run by ``crossbound verify``.

Each suite returns a :class:`SuiteResult`; a suite never raises for a failed
check, it records the failure and moves on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp

from . import combinatorics, entropy, family, planner
from .errors import CrossboundError
from .precision import certainly_le, ivdps

LEVELS = {
    "quick": {"stirling_q": 30, "pair_p": 4, "pair_q": 6,
              "plans": [(10**4, "0.2", "0.5")]},
    "full": {"stirling_q": 60, "pair_p": 6, "pair_q": 8,
             "plans": [(10**3, "0.2", "0.5"), (10**4, "0.2", "0.5"), (10**6, "0.2", "0.5"),
                       (10**6, "1", "0.1"), (10**9, "0.5", "0.25")]},
}
MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok, what):
        self.checked += 1
        if not ok:
            self.failures.append(what)

    def summary(self):
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": [str(f) for f in self.failures[:MAX_REPORTED]],
                "failure_count": len(self.failures)}


def entropy_suite(level="quick") -> SuiteResult:
    res = SuiteResult("entropy_identities")
    for i in range(1, 1000):
        x = i / 1000
        res.check(abs(entropy.binary_entropy(x) - entropy.binary_entropy(1 - x)) < 1e-14,
                  f"H symmetry at {x}")
    h = 1e-6
    for i in range(1, 100):
        x = i / 100
        fd = (entropy.binary_entropy(x + h) - entropy.binary_entropy(x - h)) / (2 * h)
        res.check(abs(fd - entropy.entropy_derivative(x)) < 1e-6, f"H' finite difference at {x}")
    for i in range(1, 500):
        x = i / 1000
        a = entropy.critical_residual(x)
        b = entropy.critical_residual_entropy_form(x)
        res.check((a > 0) == (b > 0), f"residual forms disagree in sign at {x}")
    try:
        sol = entropy.solve_entropy_minimum(1e-12)
    except CrossboundError as exc:
        res.check(False, f"solver: {exc}")
        return res
    with mp.workdps(sol.working_dps):
        res.check(abs(entropy.critical_residual_entropy_form(sol.x0)) <= 1e-12, "entropy-form residual at x0")
        res.check(sol.c_star < sol.f_half < mp.mpf(9) / 4, "hierarchy C* < 1/(ln 2)^2 < 9/4")
    return res


def stirling_suite(level="quick") -> SuiteResult:
    res = SuiteResult("stirling_certificates")
    q_max = LEVELS[level]["stirling_q"]
    for q in range(2, q_max + 1):
        for k in range(1, q):
            try:
                cert = combinatorics.entropy_lower_bound(q, k)
            except CrossboundError as exc:
                res.check(False, f"({q},{k}): {exc}")
                continue
            res.check(cert.enclosure[1] <= combinatorics.binomial_exact(q, k),
                      f"Stirling bound exceeds C({q},{k})")
            res.check(combinatorics.binomial_exact(q, k) == math.comb(q, k), f"binomial ({q},{k})")
    for n in range(1, 4 * q_max):
        lower, upper = combinatorics.factorial_bounds(n)
        res.check(lower <= math.factorial(n) <= upper, f"factorial bracket at {n}")
    return res


def pair_bound_suite(level="quick") -> SuiteResult:
    res = SuiteResult("pair_bounds")
    cfg = LEVELS[level]
    for p in range(2, cfg["pair_p"] + 1):
        for q in range(2, cfg["pair_q"] + 1):
            for k in range(1, q + 1, 2):
                spec = family.FamilySpec(p, q, k)
                total = family.exact_pair_bound_sum(spec)
                res.check(total <= family.lemma3_bound(spec), f"pair sum exceeds bound at {spec}")
                res.check(total == family.closed_form_pair_bound_sum(spec),
                          f"closed form disagrees at {spec}")
                res.check(family.distinctness_check(spec), f"duplicate curves at {spec}")
                c = combinatorics.binomial_exact(q, k)
                one, two = family.neighbour_profile(spec)
                res.check(all(a <= 2 * c and a + b <= 3 * c - 1 for a, b in zip(one, two)),
                          f"neighbour counts at {spec}")
    return res


def planner_suite(level="quick") -> SuiteResult:
    res = SuiteResult("planner_chain")
    for g, alpha, eps in LEVELS[level]["plans"]:
        for mode in planner.MODES:
            tag = f"(g={g}, alpha={alpha}, eps={eps}, {mode})"
            try:
                pl, rep = planner.feasibility_search(g, alpha, eps, mode)
            except CrossboundError as exc:
                res.check(False, f"{tag}: {exc}")
                continue
            res.check((pl.p - 1) * (pl.q - 1) <= 2 * g - 2, f"{tag}: embedding")
            res.check(pl.k % 2 == 1 and abs(pl.k - pl.x * pl.q) <= 2, f"{tag}: k admissible")
            with ivdps(2 * planner.PLAN_DPS):
                res.check(certainly_le(*planner.eta_condition(pl.x, pl.eta, pl.epsilon)), f"{tag}: eta")
                res.check(certainly_le(*planner.delta_condition(pl.x, pl.eta, pl.delta, pl.epsilon)),
                          f"{tag}: delta")
            again = planner.evaluate_side_conditions(pl, 2 * planner.PLAN_DPS)
            res.check([c.verdict for c in again.conditions] == [c.verdict for c in rep.conditions],
                      f"{tag}: verdicts change at doubled precision")
            if not rep.certificate_feasible:
                continue
            cb = planner.certified_bound(pl, rep)
            res.check(pl.M >= pl.m + 1, f"{tag}: M >= m + 1")
            res.check(cb.subset_factor_ok, f"{tag}: M/(M-1) <= 1 + 1/m")
            res.check(cb.crossing_bound >= planner.exact_subset_bound(pl), f"{tag}: ceiling")
            if pl.m >= 1 / pl.delta:
                res.check(cb.crossing_bound <= cb.relaxed_bound, f"{tag}: relaxed chain step")
            res.check(cb.leading_constant > 0, f"{tag}: positive constant")
    return res


SUITES = (entropy_suite, stirling_suite, pair_bound_suite, planner_suite)


def run(level="quick") -> list[SuiteResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {sorted(LEVELS)}")
    return [suite(level) for suite in SUITES]
