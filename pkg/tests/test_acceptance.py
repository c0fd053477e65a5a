"""Acceptance criteria, one test per clause; see the summary section of the pytest run."""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from crossbound import cli, combinatorics, entropy, family, planner, precision

pytestmark = pytest.mark.acceptance

C1, C2, C3, C4, C5 = "constants", "hierarchy", "critical equation", "Stirling certificates", "pair-bound oracle"
C6, C7, C8, C9, C10 = "topology bookkeeping", "planner chain", "convergence trend", "certified floors", "determinism"

C_STAR_REF = mpf("1.5805443269")
X0_REF = mpf("0.2414851418")


def fresh_constants(tolerance):
    entropy._solve.cache_clear()
    t = time.perf_counter()
    env, code = cli.cmd_constants(tolerance)
    return env, code, time.perf_counter() - t


# 1
def test_c1_constant_values(acceptance):
    env, code, _ = fresh_constants(1e-10)
    out = env["outputs"]
    d_c, d_x = abs(out["c_star"] - 1.5805443269), abs(out["x0"] - 0.2414851418)
    acceptance(1, C1, code == 0 and d_c <= 1e-8 and d_x <= 1e-8,
               f"c_star={out['c_star']} (|d|={d_c:.1e}), x0={out['x0']} (|d|={d_x:.1e})")


def test_c1_runtime(acceptance):
    _, _, dt = fresh_constants(1e-10)
    acceptance(1, C1, dt < 1.0, f"{dt:.3f} s")


# 2
def test_c2_symmetric_value(acceptance):
    with mp.workdps(50):
        f_half = entropy.objective(mpf(1) / 2)
        ok = abs(f_half - 1 / mp.log(2) ** 2) < mpf(10) ** -45 and mp.nstr(f_half, 6) == "2.08137"
    acceptance(2, C2, ok, f"f(1/2)={mp.nstr(f_half, 12)}")


def test_c2_strict_chain_and_reduction(acceptance):
    t = time.perf_counter()
    sol = entropy.solve_entropy_minimum(1e-10)
    with mp.workdps(sol.working_dps):
        chain = sol.c_star < sol.f_half < mpf(9) / 4
        reduction = 1 - sol.c_star / (mpf(9) / 4)
    dt = time.perf_counter() - t
    acceptance(2, C2, chain and 0.29 <= reduction <= 0.31 and dt < 1.0,
               f"reduction={float(reduction):.4f}, {dt:.3f} s")


# 3
def test_c3_residual(acceptance):
    sol = entropy.solve_entropy_minimum(1e-10)
    with mp.workdps(sol.working_dps):
        r = abs(sol.x0 * mp.log(sol.x0) - (1 + sol.x0) * mp.log(1 - sol.x0))
    acceptance(3, C3, r <= 1e-9, f"|residual|={mp.nstr(r, 3)}")


def test_c3_both_forms_share_root(acceptance):
    sol = entropy.solve_entropy_minimum(1e-10)
    with mp.workdps(50):
        other = entropy.brent_root(entropy.critical_residual_entropy_form, mpf("0.1"), mpf("0.4"),
                                   xtol=mpf(10) ** -40, eps=mp.eps)
        d = abs(other - sol.x0)
    acceptance(3, C3, d <= 1e-9, f"|x0 - x0'|={mp.nstr(d, 3)}")


# 4
def test_c4_stirling_sweep(acceptance):
    t = time.perf_counter()
    violations = checked = 0
    for q in range(2, 61):
        for k in range(1, q):
            cert = combinatorics.entropy_lower_bound(q, k)
            checked += 1
            violations += not (cert.lower_bound <= cert.exact_value == math.comb(q, k)
                               and cert.enclosure[1] <= cert.exact_value)
    dt = time.perf_counter() - t
    acceptance(4, C4, violations == 0 and dt < 10, f"{checked} pairs, {violations} violations, {dt:.2f} s")


# 5
def test_c5_pair_bound_sweep(acceptance):
    t = time.perf_counter()
    bad = []
    n = 0
    for p in range(2, 7):
        for q in range(2, 9):
            for k in range(1, q + 1, 2):
                spec = family.FamilySpec(p, q, k)
                exact = family.exact_pair_bound_sum(spec)
                enumerated = family.classified_pair_bound_sum(spec)
                n += 1
                if not (exact == enumerated == family.closed_form_pair_bound_sum(spec)
                        and exact <= family.lemma3_bound(spec)):
                    bad.append(spec)
    hand = family.FamilySpec(3, 5, 3)
    hand_ok = family.exact_pair_bound_sum(hand) == 1680 and family.lemma3_bound(hand) == 2400
    dt = time.perf_counter() - t
    acceptance(5, C5, not bad and hand_ok and dt < 30, f"{n} specs, failures={bad}, {dt:.2f} s")


# 6
def test_c6_curve_subsurfaces(acceptance):
    ok = all(family.surface_topology(2, k) == family.SurfaceTopology(2 + k - 2 * k, 1, (k - 1) // 2)
             for k in range(3, 22, 2))
    acceptance(6, C6, ok, "odd k in [3, 21]")


def test_c6_euler_grid(acceptance):
    ok = all(family.surface_topology(p, q).euler_characteristic == p + q - p * q
             for p in range(2, 21) for q in range(2, 21))
    acceptance(6, C6, ok, "p, q in [2, 20]")


def test_c6_embedding_random(acceptance):
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(100):
        p, q, g = rng.randint(2, 300), rng.randint(2, 300), rng.randint(2, 50_000)
        independent = (p - 1) * (q - 1) - 1 <= 2 * g - 2  # |chi| = (p-1)(q-1) - 1
        mismatches += family.embedding_check(p, q, g).fits != independent
    acceptance(6, C6, mismatches == 0, f"100 triples, {mismatches} mismatches")


# 7
def _desk_plan():
    return planner.plan(10**4, "0.2", "0.5", "optimized", search=True)


def test_c7_feasible_plan_exists(acceptance):
    t = time.perf_counter()
    pl, rep = _desk_plan()
    dt = time.perf_counter() - t
    acceptance(7, C7, rep.certificate_feasible and dt < 5,
               f"q={pl.q}, k={pl.k}, p={pl.p}, M={pl.M}, m={pl.m}, {dt:.2f} s")


def test_c7_leading_constant_in_sanity_interval(acceptance):
    pl, rep = _desk_plan()
    cb = planner.certified_bound(pl, rep)
    c = precision.as_fraction(cb.leading_constant)
    acceptance(7, C7, Fraction(1, 257) < c < Fraction(9, 4),
               f"leading_constant={float(cb.leading_constant):.6f}, interval (1/257, 9/4)")


def test_c7_rows_reverified_at_doubled_precision(acceptance):
    pl, rep = _desk_plan()
    again = planner.evaluate_side_conditions(pl, 2 * rep.precision)
    same = [(a.name, a.verdict) for a in rep.conditions] == [(b.name, b.verdict) for b in again.conditions]
    acceptance(7, C7, same, f"{len(rep.conditions)} rows at {2 * rep.precision} digits")


# 8
G_LIST = [10**3, 10**4, 10**5, 10**6]


@pytest.fixture(scope="module")
def studies():
    t = time.perf_counter()
    sym = planner.convergence_study("0.2", "0.5", G_LIST, "symmetric")
    opt = planner.convergence_study("0.2", "0.5", G_LIST, "optimized")
    return sym, opt, time.perf_counter() - t


def test_c8_symmetric_weakly_decreasing(acceptance, studies):
    sym, _, dt = studies
    consts = [r.leading_constant for r in sym.feasible_rows]
    ok = len(consts) >= 2 and all(a >= b for a, b in zip(consts, consts[1:])) and dt < 60
    acceptance(8, C8, ok, f"constants={[round(float(c), 3) for c in consts]}, {dt:.2f} s")


def test_c8_symmetric_final_near_limit(acceptance, studies):
    sym, _, _ = studies
    limit = entropy.symmetric_constant()
    final = sym.final_constant
    ok = final is not None and limit <= final <= mpf("1.25") * limit
    acceptance(8, C8, ok, f"final={float(final):.4f}, allowed [{float(limit):.4f}, {float(1.25 * limit):.4f}]")


def test_c8_optimized_final_not_above_symmetric(acceptance, studies):
    sym, opt, _ = studies
    ok = opt.final_constant is not None and opt.final_constant <= sym.final_constant
    acceptance(8, C8, ok, f"optimized={float(opt.final_constant):.4f}, symmetric={float(sym.final_constant):.4f}")


# 9
def test_c9_certified_floors(acceptance):
    rng = random.Random(9)
    ambiguous = wrong = 0
    for _ in range(1000):
        g = rng.randint(2, 10**9)
        alpha = rng.uniform(0, 3)
        while alpha == 0:
            alpha = rng.uniform(0, 3)
        r = precision.power_floor(g, alpha)
        a = Fraction(repr(alpha))
        with mp.workdps(100):
            oracle = int(mp.floor(mp.power(g, 1 + mpf(a.numerator) / a.denominator)))
        ambiguous += not r.certified
        wrong += r.value != oracle
    acceptance(9, C9, ambiguous == 0 and wrong == 0, f"1000 inputs, {ambiguous} ambiguous, {wrong} mismatches")


# 10
def _cli_bytes(*argv):
    out = subprocess.run([sys.executable, "-m", "crossbound", *argv], capture_output=True, check=False)
    return out.stdout


def _strip_version(raw):
    env = json.loads(raw)
    env.pop("tool_version")
    return json.dumps(env, sort_keys=True)


def test_c10_plan_deterministic(acceptance):
    argv = ("plan", "--g", "1000000", "--alpha", "1", "--epsilon", "0.1", "--search")
    a, b = _cli_bytes(*argv), _cli_bytes(*argv)
    acceptance(10, C10, a == b and _strip_version(a) == _strip_version(b), f"{len(a)} bytes")


def test_c10_sweep_deterministic(acceptance):
    js = ("sweep", "--alpha", "0.2", "0.5", "--g", "1000", "10000", "--epsilon", "0.5", "--search")
    a, b = _cli_bytes(*js), _cli_bytes(*js)
    c, d = _cli_bytes(*js, "--format", "csv"), _cli_bytes(*js, "--format", "csv")
    acceptance(10, C10, a == b and c == d and c.startswith(b"alpha,g,feasible"), f"json {len(a)} B, csv {len(c)} B")
