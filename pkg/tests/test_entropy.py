import math

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from crossbound.entropy import (
    binary_entropy,
    brent_root,
    critical_residual,
    critical_residual_entropy_form,
    entropy_derivative,
    objective,
    objective_derivative,
    solve_entropy_minimum,
    symmetric_constant,
)
from crossbound.errors import ConvergenceError, DomainError

# mpmath bisection on x ln x - (1+x) ln(1-x) over [0.1, 0.4], accurate to ~1e-31
with mp.workdps(50):
    X0 = mpf("0.2414851418088111735599685446943636685049")
    C_STAR = mpf("1.580544326932714406915086101294066245863")
    F_HALF = mpf("2.081368981005607797869581603734991425064")


def test_entropy_at_half_is_ln2():
    assert binary_entropy(0.5) == pytest.approx(math.log(2), abs=1e-15)


def test_entropy_at_quoted_minimiser():
    # direct 40-digit evaluation
    assert binary_entropy(0.2414851418) == pytest.approx(0.5527857829329473, abs=1e-12)


def test_entropy_symmetry_example():
    assert binary_entropy(0.1) == pytest.approx(binary_entropy(0.9), abs=1e-15)


@pytest.mark.parametrize("x", [0.0, 1.0, -0.1, 1.5])
def test_entropy_domain(x):
    with pytest.raises(DomainError):
        binary_entropy(x)
    with pytest.raises(DomainError):
        entropy_derivative(x)
    with pytest.raises(DomainError):
        critical_residual(x)


@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_entropy_bounds_and_symmetry(x):
    h = binary_entropy(x)
    assert 0 < h <= math.log(2) + 1e-15
    assert h == pytest.approx(binary_entropy(1 - x), abs=1e-14)


def test_symmetry_dense_grid():
    for i in range(1, 10_000):
        x = i / 10_000
        assert abs(binary_entropy(x) - binary_entropy(1 - x)) < 1e-15


def test_derivative_examples():
    assert entropy_derivative(0.5) == 0
    assert entropy_derivative(0.25) == pytest.approx(math.log(3), abs=1e-15)
    h = 1e-6
    fd = (binary_entropy(0.3 + h) - binary_entropy(0.3 - h)) / (2 * h)
    assert fd == pytest.approx(entropy_derivative(0.3), abs=1e-8)


@given(st.floats(min_value=0.001, max_value=0.499))
def test_derivative_positive_below_half(x):
    assert entropy_derivative(x) > 0


@pytest.mark.parametrize("x", ["0.05", "0.3", "0.7", "0.95"])
def test_central_difference_error_is_second_order(x):
    with mp.workdps(50):
        x = mpf(x)
        errs = []
        for h in ("1e-4", "1e-5", "1e-6"):
            h = mpf(h)
            fd = (binary_entropy(x + h) - binary_entropy(x - h)) / (2 * h)
            errs.append(abs(fd - entropy_derivative(x)))
        for a, b in zip(errs, errs[1:]):
            assert 90 < a / b < 110


@pytest.mark.parametrize("x", [0.05, 0.15, 0.2414851418, 0.35, 0.49])
def test_objective_derivative_matches_finite_difference(x):
    h = 1e-6
    fd = (objective(x + h) - objective(x - h)) / (2 * h)
    assert objective_derivative(x) == pytest.approx(fd, rel=1e-6, abs=1e-7)


def test_objective_examples():
    assert objective(0.5) == pytest.approx(1 / math.log(2) ** 2, abs=1e-12)
    assert objective(0.5) == pytest.approx(2.0813690, abs=1e-7)
    assert objective(0.2414851418) == pytest.approx(1.5805443, abs=1e-7)
    f0 = objective(float(X0))
    assert objective(0.05) > f0 and objective(0.45) > f0


@pytest.mark.parametrize("x", [0.0, 1e-13, 0.5000001, 0.7])
def test_objective_domain(x):
    with pytest.raises(DomainError):
        objective(x)


def test_objective_diverges_towards_zero():
    values = [objective(10.0**-e) for e in range(2, 12)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_residual_examples():
    assert abs(critical_residual(0.2414851418)) < 1e-8
    assert critical_residual(0.5) == pytest.approx(math.log(2), abs=1e-15)
    assert critical_residual(0.2) * critical_residual(0.3) < 0


def test_residual_forms_agree_in_sign_and_root():
    for i in range(1, 5000):
        x = i / 10_000
        a, b = critical_residual(x), critical_residual_entropy_form(x)
        assert (a > 0) == (b > 0), x
    with mp.workdps(50):
        assert abs(critical_residual_entropy_form(X0)) < mpf("1e-29")  # oracle accurate to ~1e-31


@pytest.mark.parametrize("tol", [1e-6, 1e-9, 1e-12, 1e-15])
def test_solver_against_frozen_values(tol):
    sol = solve_entropy_minimum(tol)
    mp.dps = 50
    try:
        _check_solution(sol, tol)
    finally:
        mp.dps = 15


def _check_solution(sol, tol):
    assert abs(sol.x0 - X0) <= tol
    assert abs(sol.c_star - C_STAR) <= tol
    assert abs(sol.residual) <= tol
    assert abs(sol.f_half - F_HALF) <= mpf(10) ** -38
    assert 0 < sol.x0 < 0.5
    assert sol.c_star <= sol.f_half


def test_solver_reported_values():
    sol = solve_entropy_minimum(1e-9)
    assert abs(sol.x0 - mpf("0.2414851418")) <= 1e-9
    assert abs(sol.c_star - mpf("1.5805443269")) <= 1e-8
    assert abs(sol.f_half - mpf("2.081368982")) <= 1e-8


def test_solver_against_scipy_brentq():
    from scipy.optimize import brentq

    root = brentq(critical_residual, 0.1, 0.4, xtol=1e-15)
    assert float(solve_entropy_minimum(1e-12).x0) == pytest.approx(root, abs=1e-13)


def test_solver_is_global_minimum_on_grid():
    sol = solve_entropy_minimum(1e-10)
    c = float(sol.c_star)
    for i in range(1, 5001):
        assert objective(i * 1e-4) >= c - 1e-15


def test_hierarchy():
    sol = solve_entropy_minimum(1e-10)
    assert sol.c_star < symmetric_constant() < mpf(9) / 4


def test_solver_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        solve_entropy_minimum(0)
    with pytest.raises(DomainError):
        solve_entropy_minimum(0.01)


def test_bracket_without_sign_change_reports_state():
    with pytest.raises(ConvergenceError, match="does not change sign"):
        solve_entropy_minimum(1e-9, bracket=("0.3", "0.45"))


def test_brent_on_known_roots():
    assert brent_root(lambda x: x * x - 2, 0.0, 2.0, 1e-14) == pytest.approx(math.sqrt(2), abs=1e-13)
    with mp.workdps(60):
        r = brent_root(lambda x: mp.cos(x) - x, mpf(0), mpf(1), mpf(10) ** -55, eps=mp.eps)
        assert abs(mp.cos(r) - r) < mpf(10) ** -50


def test_interval_evaluation_encloses_point_value():
    from mpmath import iv

    box = binary_entropy(iv.mpf(["0.24", "0.25"]))
    assert box.a <= binary_entropy(0.245) <= box.b
