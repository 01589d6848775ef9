"""
Тесты тестовой задачи с переменным коэффициентом
"""
import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from conftest import constant_problem
from numerics import SolverOptions, pw_eval, reconstruct
from services.problem_service import artificial_problem, problem_service


def test_root_count(artificial_solution):
    assert artificial_solution.open_count == 2096
    assert artificial_solution.count == 2097
    assert artificial_solution.skipped == 1


def test_root_at_left_end_is_first_index(artificial_solution):
    assert artificial_solution.amplitude.d2 == math.pi
    assert artificial_solution.kth(1) == 0.0
    roots, _ = artificial_solution.open_roots()
    assert roots.size == 2096
    assert roots[0] > 0.0
    assert roots[0] == artificial_solution.kth(2)


def test_roots_match_direct_integration(artificial_solution):
    lam = 1e3
    q = artificial_problem(lam).q
    roots, derivatives = artificial_solution.roots(np.arange(2, 12))

    def rhs(t, y):
        return [y[1], -lam * lam * q(t) * y[0]]

    reference = solve_ivp(rhs, (0.0, float(roots[-1])), [0.0, lam], method="DOP853", rtol=1e-13, atol=1e-13,
                          dense_output=True)
    values = reference.sol(roots)
    # смещение корня ≈ y/y′
    assert np.max(np.abs(values[0] / values[1])) <= 1e-11
    np.testing.assert_allclose(derivatives, values[1], rtol=1e-9)

    t = np.linspace(0.0, float(roots[-1]), 201)
    direct = reference.sol(t)[0]
    phase_form = reconstruct(artificial_solution.phase, artificial_solution.amplitude, t)
    assert np.max(np.abs(phase_form - direct)) <= 1e-9 * np.max(np.abs(direct))


def test_anchor_at_interior_point():
    opts = SolverOptions(k=16)
    left = problem_service.solve(artificial_problem(1e3), 1.0, 0.0, opts)
    phase, amp = left.phase, left.amplitude

    t0 = 0.4
    angle = pw_eval(phase.alpha, t0) + amp.d2
    slope = pw_eval(phase.alpha1, t0)
    curvature = pw_eval(phase.alpha2, t0)
    y0 = amp.d1 * math.sin(angle) / math.sqrt(slope)
    yp0 = amp.d1 * (math.cos(angle) * math.sqrt(slope) - math.sin(angle) * curvature / (2.0 * slope ** 1.5))

    anchored = problem_service.solve(artificial_problem(1e3), y0, yp0, opts, anchor=t0)
    assert anchored.amplitude.d1 == pytest.approx(amp.d1, rel=1e-9)
    assert anchored.amplitude.d2 == pytest.approx(amp.d2, abs=1e-9)
    assert anchored.count == left.count
    ks = np.arange(1, 51)
    np.testing.assert_allclose(anchored.roots(ks)[0], left.roots(ks)[0], atol=1e-12)


@pytest.mark.parametrize("lam, expected", [(1e2, 32), (1e4, 3183), (1e6, 318310)])
def test_constant_coefficient_counts_scale_with_lambda(lam, expected):
    solution = problem_service.solve(constant_problem(lam), 1.0, 0.0, SolverOptions(k=16))
    assert solution.amplitude.d2 == pytest.approx(math.pi / 2, abs=1e-12)
    assert solution.count == solution.open_count == expected
    assert solution.kth(expected) == pytest.approx((expected - 0.5) * math.pi / lam, rel=1e-10)


def test_coefficient_is_positive():
    q = artificial_problem(1e5).q
    t = np.linspace(0.0, 1.0, 1001)
    assert np.all(q(t) > 0)


@pytest.mark.slow
@pytest.mark.parametrize("lam, expected", [(1e4, 13339), (1e5, 93398), (1e6, 736207)])
def test_large_lambda_counts(lam, expected):
    solution = problem_service.artificial(lam, SolverOptions(k=16))
    assert solution.open_count == expected


@pytest.mark.slow
def test_node_count_does_not_grow_with_lambda():
    nodes = [problem_service.artificial(lam, SolverOptions(k=16)).phase.alpha1.node_count for lam in (1e3, 1e6)]
    assert max(nodes) <= 2 * min(nodes)
