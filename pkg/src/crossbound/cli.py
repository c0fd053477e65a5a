"""Command-line interface: constants, plan, family, verify, sweep.

Exit codes: 0 success, 1 verification failure, 2 infeasible plan,
64 usage error, 70 internal certificate violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from mpmath import mp

from . import family, planner, report, verify
from .entropy import critical_residual_entropy_form, solve_entropy_minimum
from .errors import BudgetExceeded, CertificateViolation, CrossboundError, DomainError, InvalidFamilyError
from .precision import as_fraction

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64
EXIT_CERTIFICATE = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _decimal(text):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _fixed(value, places=10):
    """Truncate (not round) a positive real to ``places`` decimals."""
    scaled = math.floor(as_fraction(value) * 10**places)
    whole, frac = divmod(scaled, 10**places)
    return f"{whole}.{frac:0{places}d}"


def cmd_constants(tolerance=1e-10):
    if not 1e-15 <= tolerance <= 1e-3:
        raise UsageError(f"--tolerance must lie in [1e-15, 1e-3], got {tolerance}")
    sol = solve_entropy_minimum(tolerance)
    with mp.workdps(sol.working_dps):
        outputs = {
            "x0": sol.x0,
            "c_star": sol.c_star,
            "f_half": sol.f_half,
            "residual": sol.residual,
            "residual_entropy_form": critical_residual_entropy_form(sol.x0),
            "hierarchy": {
                "c_star": sol.c_star,
                "symmetric": sol.f_half,
                "bjp_upper": planner.BJP_UPPER,
                "holds": bool(sol.c_star < sol.f_half < mp.mpf(9) / 4),
                "reduction_vs_bjp": 1 - sol.c_star / (mp.mpf(9) / 4),
            },
            "display": {"x0": _fixed(sol.x0), "c_star": _fixed(sol.c_star), "f_half": _fixed(sol.f_half)},
        }
    return report.envelope("constants", {"tolerance": tolerance}, outputs, sol.working_dps), EXIT_OK


def _plan_payload(pl, rep, bound):
    return {
        "plan": pl,
        "side_conditions": list(rep.conditions),
        "certificate_feasible": rep.certificate_feasible,
        "overall_feasible": rep.overall_feasible,
        "bound": bound,
    }


def cmd_plan(g, alpha, epsilon, mode="optimized", search=False, precision=planner.PLAN_DPS):
    if g < 3 or alpha <= 0 or epsilon <= 0:
        raise UsageError("need g >= 3, alpha > 0, epsilon > 0")
    pl, rep = planner.plan(g, alpha, epsilon, mode, search, precision)
    bound = planner.certified_bound(pl, rep, precision) if rep.certificate_feasible else None
    inputs = {"g": g, "alpha": alpha, "epsilon": epsilon, "mode": mode, "search": search,
              "precision": precision, "x": pl.x}
    env = report.envelope("plan", inputs, _plan_payload(pl, rep, bound), precision)
    return env, EXIT_OK if rep.certificate_feasible else EXIT_INFEASIBLE


def cmd_family(p, q, k, cap=family.DEFAULT_CAP):
    try:
        spec = family.FamilySpec(p, q, k)
    except InvalidFamilyError as exc:
        raise UsageError(str(exc))
    size = family.family_size(spec)
    if size > cap:
        raise UsageError(f"family size M={size} exceeds --cap {cap}")
    topo = family.surface_topology(p, q)
    exact = family.exact_pair_bound_sum(spec, cap)
    bound = family.lemma3_bound(spec)
    outputs = {
        "M": size,
        "euler_characteristic": topo.euler_characteristic,
        "genus": topo.genus,
        "boundary_components": topo.boundary_components,
        # a single lower vertex gives a disk, outside the p, q >= 2 topology model
        "curve_subsurface": family.surface_topology(2, k) if k >= 2 else None,
        "exact_pair_bound_sum": exact,
        "closed_form_pair_bound_sum": family.closed_form_pair_bound_sum(spec),
        "lemma3_bound": bound,
        "ratio": Fraction(exact) / bound,
        "distinct": family.distinctness_check(spec, cap),
    }
    return report.envelope("family", {"p": p, "q": q, "k": k, "cap": cap}, outputs, 0), EXIT_OK


def cmd_verify(level="quick"):
    results = verify.run(level)
    ok = all(r.passed for r in results)
    outputs = {"suites": [r.summary() for r in results], "passed": ok}
    return report.envelope("verify", {"level": level}, outputs, 2 * planner.PLAN_DPS), (
        EXIT_OK if ok else EXIT_VERIFY_FAILED
    )


def sweep_rows(alpha_list, g_list, epsilon, mode="optimized", search=True, precision=planner.PLAN_DPS):
    sym = report.real(planner.symmetric_constant())
    rows = []
    for alpha in alpha_list:
        for g in g_list:
            r = planner.study_row(g, as_fraction(alpha), epsilon, mode, search, precision)
            rows.append({
                "alpha": str(alpha), "g": g, "feasible": r.feasible, "q": r.q, "k": r.k, "p": r.p,
                "leading_constant": None if r.leading_constant is None else report.real(r.leading_constant),
                "symmetric_constant": sym,
                "bjp_upper": report.real(planner.BJP_UPPER),
                "bjp_lower": report.real(planner.BJP_LOWER),
            })
    return rows


def cmd_sweep(alpha_list, g_list, epsilon, mode="optimized", search=True, precision=planner.PLAN_DPS):
    if not alpha_list or not g_list:
        raise UsageError("--alpha and --g need at least one value each")
    if any(g < 3 for g in g_list) or epsilon <= 0 or any(as_fraction(a) <= 0 for a in alpha_list):
        raise UsageError("need g >= 3, alpha > 0, epsilon > 0")
    rows = sweep_rows(alpha_list, g_list, epsilon, mode, search, precision)
    inputs = {"alpha": [str(a) for a in alpha_list], "g": list(g_list), "epsilon": epsilon,
              "mode": mode, "search": search, "precision": precision}
    return report.envelope("sweep", inputs, {"columns": list(report.CSV_COLUMNS), "rows": rows}, precision), EXIT_OK


def build_parser():
    ap = _Parser(prog="crossbound", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", help="write the report here instead of stdout")

    c = sub.add_parser("constants", help="C*, x0 and the constant hierarchy")
    c.add_argument("--tolerance", type=float, default=1e-10)
    common(c)

    p = sub.add_parser("plan", help="run the parameter chain at one (g, alpha, epsilon)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--alpha", type=_decimal, required=True)
    p.add_argument("--epsilon", type=_decimal, required=True)
    p.add_argument("--mode", choices=planner.MODES, default="optimized")
    p.add_argument("--search", action="store_true", help="enlarge q until M > m")
    p.add_argument("--precision", type=int, default=planner.PLAN_DPS)
    common(p)

    f = sub.add_parser("family", help="exact pair-bound analysis of one curve family")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--cap", type=int, default=family.DEFAULT_CAP)
    common(f)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--level", choices=sorted(verify.LEVELS), default="quick")
    common(v)

    s = sub.add_parser("sweep", help="grid of plans over alpha and g")
    s.add_argument("--alpha", type=str, nargs="+", required=True)
    s.add_argument("--g", type=int, nargs="+", required=True)
    s.add_argument("--epsilon", type=_decimal, required=True)
    s.add_argument("--mode", choices=planner.MODES, default="optimized")
    s.add_argument("--search", action="store_true")
    s.add_argument("--precision", type=int, default=planner.PLAN_DPS)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    common(s)
    return ap


def _dispatch(args):
    if args.command == "constants":
        return cmd_constants(args.tolerance)
    if args.command == "plan":
        return cmd_plan(args.g, args.alpha, args.epsilon, args.mode, args.search, args.precision)
    if args.command == "family":
        return cmd_family(args.p, args.q, args.k, args.cap)
    if args.command == "verify":
        return cmd_verify(args.level)
    if args.command == "sweep":
        for a in args.alpha:
            _decimal(a)
        return cmd_sweep(args.alpha, args.g, args.epsilon, args.mode, args.search, args.precision)
    raise UsageError(f"unknown command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        env, code = _dispatch(args)
    except (UsageError, DomainError, argparse.ArgumentTypeError, BudgetExceeded) as exc:
        print(f"crossbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateViolation as exc:
        print(f"crossbound: certificate violation: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except CrossboundError as exc:
        print(f"crossbound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.command == "sweep" and args.format == "csv":
        text = report.csv_text(env["outputs"]["rows"])
    else:
        text = report.dumps(env)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
