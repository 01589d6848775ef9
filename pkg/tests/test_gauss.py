"""
Тесты квадратур Гаусса–Лежандра, Якоби и Лагерра
"""
import math

import mpmath
import numpy as np
import pytest

from config import Config
from numerics import Family, InvalidArgumentError, SeriesDivergenceError
from oracle import rule_oracle
from services.gauss_service import (
    _gamma_series,
    family_options,
    gamma_ratio,
    gauss_service,
    jacobi_rule,
    laguerre_rule,
    legendre_rule,
    uses_graded_mesh,
)


class TestLegendre:
    def test_one_point(self):
        rule = legendre_rule(1)
        assert rule.nodes[0] == pytest.approx(0.0, abs=1e-15)
        assert rule.weights[0] == pytest.approx(2.0, rel=1e-13)

    def test_two_points(self):
        rule = legendre_rule(2)
        np.testing.assert_allclose(rule.nodes, [-0.5773502691896257, 0.5773502691896257], atol=1e-14)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], rtol=1e-13)

    def test_symmetry_and_order(self):
        rule = legendre_rule(51)
        assert np.all(np.diff(rule.nodes) > 0)
        np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])
        assert rule.nodes[25] == 0.0

    def test_matches_oracle(self):
        rule = legendre_rule(100)
        reference = rule_oracle(Family.LEGENDRE, 100)
        assert rule.nodes[-1] == pytest.approx(0.9997137267734413, abs=1e-14)
        np.testing.assert_allclose(rule.nodes, reference.nodes, atol=1e-14)
        np.testing.assert_allclose(rule.weights, reference.weights, rtol=1e-12)

    @pytest.mark.parametrize("n", [10, 30])
    def test_small_orders_match_oracle(self, n):
        rule = legendre_rule(n)
        reference = rule_oracle(Family.LEGENDRE, n)
        assert np.max(np.abs(rule.nodes - reference.nodes)) <= 1e-13
        assert np.max(np.abs(rule.weights - reference.weights) / reference.weights) <= 1e-13

    def test_graded_mesh_below_default_threshold(self, monkeypatch):
        monkeypatch.setattr(Config, "LEGENDRE_GRADED_MIN_N", 100)
        assert uses_graded_mesh(100)
        rule = legendre_rule(100)
        reference = rule_oracle(Family.LEGENDRE, 100)
        assert rule.family is Family.LEGENDRE
        np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.max(np.abs(rule.nodes - reference.nodes)) <= 1e-11
        assert rule.weights.sum() == pytest.approx(2.0, rel=1e-10)

    def test_interlaces_with_next_order(self):
        lower, upper = legendre_rule(40).nodes, legendre_rule(41).nodes
        assert np.all(upper[:-1] < lower)
        assert np.all(lower < upper[1:])

    def test_integrates_polynomials(self):
        rule = legendre_rule(30)
        for m in range(0, 59, 2):
            assert np.dot(rule.weights, rule.nodes ** m) == pytest.approx(2.0 / (m + 1), rel=1e-13)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [1000, 2000])
    def test_large_order_against_oracle(self, n):
        rule = legendre_rule(n)
        reference = rule_oracle(Family.LEGENDRE, n)
        assert np.max(np.abs(rule.nodes - reference.nodes)) <= 1e-13
        assert np.max(np.abs(rule.weights - reference.weights) / reference.weights) <= 1e-13

    @pytest.mark.slow
    def test_default_graded_path(self):
        n = Config.LEGENDRE_GRADED_MIN_N
        rule = legendre_rule(n)
        assert rule.n == n
        assert np.all(np.diff(rule.nodes) > 0)
        np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])
        assert math.fsum(rule.weights) == pytest.approx(2.0, rel=1e-12)


class TestJacobi:
    def test_reduces_to_legendre(self):
        jacobi = jacobi_rule(50, 0.0, 0.0)
        legendre = legendre_rule(50)
        np.testing.assert_allclose(jacobi.nodes, legendre.nodes, atol=1e-14)
        np.testing.assert_allclose(jacobi.weights, legendre.weights, rtol=1e-12)

    @pytest.mark.parametrize("n", [10, 20, 100, pytest.param(1000, marks=pytest.mark.slow)])
    def test_chebyshev_first_kind(self, n):
        rule = jacobi_rule(n, -0.5, -0.5)
        expected = np.sort(np.cos((2 * np.arange(1, n + 1) - 1) * math.pi / (2 * n)))
        np.testing.assert_allclose(rule.nodes, expected, atol=1e-13)
        np.testing.assert_allclose(rule.weights, math.pi / n, rtol=1e-13)

    def test_weight_sum(self):
        gamma, zeta = -0.3, 0.25
        rule = jacobi_rule(100, gamma, zeta)
        total = 2.0 ** (gamma + zeta + 1.0) * float(mpmath.beta(gamma + 1.0, zeta + 1.0))
        assert rule.weights.sum() == pytest.approx(total, rel=1e-13)
        assert (rule.gamma, rule.zeta) == (gamma, zeta)

    def test_asymmetric_matches_oracle(self):
        params = {"gamma": 0.7, "zeta": -0.4}
        rule = jacobi_rule(61, params["gamma"], params["zeta"])
        reference = rule_oracle(Family.JACOBI, 61, params)
        np.testing.assert_allclose(rule.nodes, reference.nodes, atol=1e-14)
        np.testing.assert_allclose(rule.weights, reference.weights, rtol=1e-12)

    @pytest.mark.slow
    @pytest.mark.parametrize("gamma, zeta", [(-0.3, 0.25), (1.5707963267948966, math.sqrt(2.0)), (0.2, 0.5)])
    @pytest.mark.parametrize("n", [100, 1000])
    def test_parameter_pairs_against_oracle(self, gamma, zeta, n):
        rule = jacobi_rule(n, gamma, zeta)
        reference = rule_oracle(Family.JACOBI, n, {"gamma": gamma, "zeta": zeta})
        assert np.max(np.abs(rule.nodes - reference.nodes)) <= 1e-13
        assert np.max(np.abs(rule.weights - reference.weights) / reference.weights) <= 1e-13

    def test_integrates_polynomials_to_degree_2n_minus_1(self):
        n, gamma, zeta = 20, 0.7, -0.4
        rule = jacobi_rule(n, gamma, zeta)
        with mpmath.workdps(50):
            for m in range(2 * n):
                moment = 2 ** mpmath.mpf(gamma + zeta + 1.0) * mpmath.fsum(
                    mpmath.binomial(m, j) * 2 ** j * (-1) ** (m - j) * mpmath.beta(zeta + j + 1.0, gamma + 1.0)
                    for j in range(m + 1)
                )
                assert math.fsum(rule.weights * rule.nodes ** m) == pytest.approx(float(moment), rel=1e-11, abs=1e-13)

    def test_interlaces_with_next_order(self):
        lower, upper = jacobi_rule(30, 0.7, -0.4).nodes, jacobi_rule(31, 0.7, -0.4).nodes
        assert np.all(upper[:-1] < lower)
        assert np.all(lower < upper[1:])

    def test_rejects_parameters(self):
        with pytest.raises(InvalidArgumentError):
            jacobi_rule(10, -1.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            jacobi_rule(10, 0.0, math.nan)


class TestLaguerre:
    def test_one_point(self):
        rule = laguerre_rule(1, 0.0)
        assert rule.nodes[0] == pytest.approx(1.0, rel=1e-14)
        assert rule.weights[0] == pytest.approx(1.0, rel=1e-13)

    def test_two_points(self):
        rule = laguerre_rule(2, 0.0)
        root2 = math.sqrt(2.0)
        np.testing.assert_allclose(rule.nodes, [2.0 - root2, 2.0 + root2], rtol=1e-14)
        np.testing.assert_allclose(rule.weights, [(2.0 + root2) / 4.0, (2.0 - root2) / 4.0], rtol=1e-13)

    @pytest.mark.parametrize("gamma", [-0.5, 0.0, 0.5])
    @pytest.mark.parametrize("n", [50, pytest.param(200, marks=pytest.mark.slow)])
    def test_moments(self, n, gamma):
        rule = laguerre_rule(n, gamma)
        assert np.all(np.diff(rule.nodes) > 0)
        for m in range(0, 31):
            moment = math.fsum(rule.weights * rule.nodes ** m)
            assert moment == pytest.approx(math.gamma(m + gamma + 1.0), rel=1e-11)

    @pytest.mark.parametrize("n, gamma", [(3, 5.0), (10, 5.0), (50, 20.0), (5, -0.9), (20, -0.9)])
    def test_extreme_parameters_match_oracle(self, n, gamma):
        rule = laguerre_rule(n, gamma)
        reference = rule_oracle(Family.LAGUERRE, n, {"gamma": gamma})
        np.testing.assert_allclose(rule.nodes, reference.nodes, rtol=1e-12)
        large = reference.weights > 1e-280
        np.testing.assert_allclose(rule.weights[large], reference.weights[large], rtol=1e-11)

    def test_interlaces_with_next_order(self):
        lower, upper = laguerre_rule(30, 0.5).nodes, laguerre_rule(31, 0.5).nodes
        assert np.all(upper[:-1] < lower)
        assert np.all(lower < upper[1:])

    def test_matches_oracle(self):
        rule = laguerre_rule(100, 1.5)
        reference = rule_oracle(Family.LAGUERRE, 100, {"gamma": 1.5})
        np.testing.assert_allclose(rule.nodes, reference.nodes, rtol=1e-12)
        large = reference.weights > 1e-280
        np.testing.assert_allclose(rule.weights[large], reference.weights[large], rtol=1e-12)


class TestGammaRatio:
    def test_trivial(self):
        assert gamma_ratio(0.0, 0.0, 0.0, 100) == 1.0

    def test_cancelling_arguments(self):
        assert gamma_ratio(1.0, 0.0, 1.0, 100) == pytest.approx(1.0, abs=1e-15)

    def test_half_parameters(self):
        n = 100
        with mpmath.workdps(40):
            expected = mpmath.gamma(n + 0.5) ** 2 / (mpmath.gamma(n) * mpmath.gamma(n + 1))
        assert gamma_ratio(0.5, 0.5, 0.0, n) == pytest.approx(float(expected), rel=1e-14)

    def test_small_n_uses_log_gamma(self):
        expected = math.gamma(3.5) ** 2 / (math.gamma(3.0) * math.gamma(4.0))
        assert gamma_ratio(0.5, 0.5, 0.0, 3) == pytest.approx(expected, rel=1e-14)

    def test_series_divergence_detected(self):
        with pytest.raises(SeriesDivergenceError):
            _gamma_series(30.0, 30.0, 0.0, 20.0, 30)


class TestDispatch:
    def test_rule_by_name(self):
        rule = gauss_service.rule("legendre", 4)
        assert rule.family is Family.LEGENDRE
        assert rule.params == {}

    def test_invalid_order(self):
        for n in (0, -3, 2.5):
            with pytest.raises(InvalidArgumentError):
                gauss_service.rule(Family.LEGENDRE, n)

    def test_legendre_options_follow_path(self, monkeypatch):
        monkeypatch.setattr(Config, "LEGENDRE_GRADED_MIN_N", 1000)
        graded = family_options(Family.LEGENDRE)
        assert (graded.k, graded.refine) == (Config.LEGENDRE_ORDER_K, False)
        assert family_options(Family.LEGENDRE, n=5000) == graded
        adaptive = family_options(Family.LEGENDRE, n=999)
        assert (adaptive.k, adaptive.refine) == (Config.JACOBI_ORDER_K, True)

    def test_family_options_ignores_missing_overrides(self):
        opts = family_options(Family.JACOBI, k=None, coeff_tol=1e-12)
        assert opts.coeff_tol == 1e-12
        assert opts.k == family_options(Family.JACOBI).k

    def test_positive_weights(self):
        for rule in (legendre_rule(33), jacobi_rule(33, 2.0, -0.7), laguerre_rule(33, -0.5)):
            assert np.all(rule.weights > 0)
            assert np.all(np.diff(rule.nodes) > 0)
