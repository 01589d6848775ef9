"""
Тесты построения фазовой функции
"""
import numpy as np
import pytest
from scipy.integrate import solve_ivp

from conftest import constant_problem
from numerics import (
    CoefficientProblem,
    ConvergenceFailureError,
    Interval,
    InvalidArgumentError,
    KummerState,
    NonPositiveCoefficientError,
    PhaseFunction,
    SeedFailureError,
    SolverOptions,
    build_phase,
    cheb_nodes,
    kummer_residual,
    nk_refine,
    pw_antiderivative,
    pw_eval,
    pw_from_function,
    trap_init,
    window_phi,
    windowed_coefficient,
)
from numerics.kummer import seed_state


class TestWindow:
    def test_midpoint(self):
        assert window_phi(0.5, Interval(0.0, 1.0)) == pytest.approx(0.5, abs=1e-15)

    def test_left_quarter_plateau(self):
        assert window_phi(0.25, Interval(0.0, 1.0)) >= 1.0 - 1e-16

    def test_right_quarter_plateau(self):
        assert window_phi(0.75, Interval(0.0, 1.0)) <= 1e-16

    def test_translated_interval(self):
        assert window_phi(10.5, Interval(10.0, 11.0)) == pytest.approx(0.5, abs=1e-15)

    def test_constant_coefficient_unchanged(self):
        prob = constant_problem()
        t = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(windowed_coefficient(prob, t), 1.0, atol=1e-15)

    def test_passthrough_and_plateau(self):
        prob = CoefficientProblem(q=lambda t: np.full_like(np.asarray(t, dtype=float), 4.0), lam=1.0,
                                  iv=Interval(0.0, 1.0))
        assert windowed_coefficient(prob, 0.9) == pytest.approx(4.0, abs=4e-15)
        assert windowed_coefficient(prob, 0.1) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_nonpositive_coefficient(self):
        prob = CoefficientProblem(q=lambda t: np.asarray(t, dtype=float) - 0.5, lam=1.0, iv=Interval(0.0, 1.0))
        with pytest.raises(NonPositiveCoefficientError):
            windowed_coefficient(prob, np.linspace(0.0, 1.0, 5))


def _linear_phase(lam: float, slope_factor: float) -> PhaseFunction:
    breakpoints = [0.0, 0.5, 1.0]
    alpha1 = pw_from_function(lambda t: np.full_like(t, slope_factor * lam), breakpoints, 16)
    alpha2 = pw_from_function(np.zeros_like, breakpoints, 16)
    return PhaseFunction(
        alpha=pw_antiderivative(alpha1, 0.0), alpha1=alpha1, alpha2=alpha2, problem=constant_problem(lam)
    )


class TestResidual:
    def test_exact_phase(self):
        residual = kummer_residual(_linear_phase(100.0, 1.0), np.linspace(0.0, 1.0, 9))
        np.testing.assert_allclose(residual, 0.0, atol=1e-15)

    def test_wrong_phase(self):
        assert kummer_residual(_linear_phase(100.0, 2.0), 0.3) == pytest.approx(-3.0, rel=1e-14)


class TestTrapInit:
    def test_fixed_point(self):
        beta, beta1 = trap_init(lambda t: np.full_like(t, 1e4), Interval(0.0, 0.1), 100.0, 0.0, 64)
        np.testing.assert_allclose(beta, 100.0, rtol=1e-12)
        np.testing.assert_allclose(beta1, 0.0, atol=1e-8)

    def test_matches_runge_kutta(self):
        lam = 10.0
        Q = lambda t: lam ** 2 * (1.0 + np.asarray(t, dtype=float)) ** 2

        def rhs(t, y):
            b, g = y
            return [g, -2.0 * b ** 3 + 2.0 * Q(t) * b + 1.5 * g * g / b]

        iv = Interval(0.0, 0.5)
        beta, _ = trap_init(Q, iv, 10.0, 10.0, 200)
        reference = solve_ivp(rhs, (0.0, 0.5), [10.0, 10.0], method="DOP853", rtol=1e-12, atol=1e-12)
        assert beta[0] == pytest.approx(reference.y[0, -1], rel=0.02)

    def test_zero_steps(self):
        with pytest.raises(InvalidArgumentError):
            trap_init(lambda t: np.ones_like(t), Interval(0.0, 1.0), 1.0, 0.0, 0)

    def test_degenerate_piece_is_seed_failure(self):
        iv = Interval(1.0, float(np.nextafter(1.0, 2.0)))
        with pytest.raises(SeedFailureError, match="too short"):
            trap_init(lambda t: np.ones_like(t), iv, 1.0, 0.0, 64)


class TestNewtonKantorovich:
    def test_constant_solution(self):
        lam = 100.0
        k = 16
        iv = Interval(0.0, 0.1)
        nodes = cheb_nodes(k, iv)
        perturbed = lam * (1.0 + 1e-3 * np.sin(7.0 * nodes))
        seed = seed_state(perturbed, np.zeros(k), iv)
        state = nk_refine(np.full(k, lam ** 2), seed, iv, lam, 0.0, SolverOptions(k=k))
        np.testing.assert_allclose(state.beta, lam, rtol=1e-13)
        assert state.iterations <= 3

    def test_negative_seed(self):
        k = 8
        seed = KummerState(
            beta=np.array([1.0] * 7 + [-1.0]), beta1=np.zeros(k), beta2=np.zeros(k),
            residual=np.zeros(k), delta=np.zeros(k),
        )
        with pytest.raises(InvalidArgumentError):
            nk_refine(np.ones(k), seed, Interval(0.0, 1.0), 1.0, 0.0, SolverOptions(k=k))

    def test_iteration_cap(self):
        lam = 100.0
        k = 16
        iv = Interval(0.0, 1e-3)
        seed = seed_state(np.full(k, 1.5 * lam), np.zeros(k), iv)
        with pytest.raises(ConvergenceFailureError):
            nk_refine(np.full(k, lam ** 2), seed, iv, 1.5 * lam, 0.0, SolverOptions(k=k, nk_max_iters=1))


class TestBuildPhase:
    def test_constant_coefficient(self, cosine_solution):
        phase = cosine_solution.phase
        np.testing.assert_allclose(phase.alpha1.values, 100.0, rtol=1e-12)
        assert phase.alpha_b == pytest.approx(100.0, rel=1e-10)
        assert phase.a == 0.0 and phase.b == 1.0

    def test_artificial_positive_and_accurate(self, artificial_solution):
        phase = artificial_solution.phase
        assert np.all(phase.alpha1.values > 0)
        assert abs(kummer_residual(phase, 0.5)) <= 1e-9

    def test_residual_at_interior_nodes(self, artificial_solution):
        phase = artificial_solution.phase
        nodes = np.linspace(0.05, 0.95, 200)
        assert np.max(np.abs(kummer_residual(phase, nodes))) <= 1e-9

    def test_explicit_partition(self):
        phase = build_phase(constant_problem(50.0), SolverOptions(k=16), partition=[0.0, 0.3, 1.0])
        assert phase.alpha1.pieces == 2
        assert pw_eval(phase.alpha, 1.0) == pytest.approx(50.0, rel=1e-10)

    def test_partition_must_cover_interval(self):
        with pytest.raises(InvalidArgumentError):
            build_phase(constant_problem(50.0), SolverOptions(k=16), partition=[0.1, 1.0])

    def test_nonpositive_coefficient(self):
        prob = CoefficientProblem(q=lambda t: np.cos(6.0 * np.asarray(t, dtype=float)), lam=50.0,
                                  iv=Interval(0.0, 1.0))
        with pytest.raises(NonPositiveCoefficientError):
            build_phase(prob, SolverOptions(k=16))

    @pytest.mark.parametrize("lam", [1e2, 1e4, 1e6])
    def test_constant_coefficient_scales_with_lambda(self, lam):
        phase = build_phase(constant_problem(lam), SolverOptions(k=16))
        np.testing.assert_allclose(phase.alpha1.values, lam, rtol=1e-12)
        np.testing.assert_allclose(phase.alpha2.values, 0.0, atol=1e-10 * lam)
        assert phase.alpha_b == pytest.approx(lam, rel=1e-10)
        assert phase.node_count <= 2 * build_phase(constant_problem(1e2), SolverOptions(k=16)).node_count
