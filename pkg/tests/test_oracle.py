"""
Тесты эталонных вычислений повышенной точности
"""
import math

import mpmath
import numpy as np
import pytest

from numerics import Family, InvalidArgumentError, OracleFailureError, OracleOverflowError
from oracle import (
    ExtReal,
    bessel_oracle_root,
    bessel_oracle_roots,
    ext_sum,
    hypergeometric_jacobi,
    opoly_eval,
    rule_oracle,
    two_prod,
    two_sum,
)


class TestErrorFreeTransforms:
    @pytest.mark.parametrize("a, b", [(0.1, 0.2), (1e16, 1.0), (math.pi, -math.e), (1e-300, 3.0)])
    def test_two_sum_is_exact(self, a, b):
        s, err = two_sum(a, b)
        with mpmath.workprec(2200):
            assert mpmath.mpf(s) + mpmath.mpf(err) == mpmath.mpf(a) + mpmath.mpf(b)

    @pytest.mark.parametrize("a, b", [(0.1, 0.2), (1.0 / 3.0, 3.0), (math.pi, math.e), (123456789.123, 1e-7)])
    def test_two_prod_is_exact(self, a, b):
        p, err = two_prod(a, b)
        with mpmath.workprec(300):
            assert mpmath.mpf(p) + mpmath.mpf(err) == mpmath.mpf(a) * mpmath.mpf(b)


class TestExtReal:
    def test_third(self):
        third = ExtReal.from_float(1.0) / 3.0
        with mpmath.workdps(40):
            assert abs(third.to_mpf() - mpmath.mpf(1) / 3) < mpmath.mpf("1e-31")

    def test_sqrt_two(self):
        root = ExtReal(2.0).sqrt()
        with mpmath.workdps(40):
            assert abs(root.to_mpf() - mpmath.sqrt(2)) < mpmath.mpf("1e-30")

    def test_vector_sum(self):
        values = [ExtReal(np.array([1e16, 1.0])), ExtReal(np.array([1.0, 1e-17])), ExtReal(np.array([-1e16, -1.0]))]
        total = ext_sum(values)
        np.testing.assert_array_equal(total.to_float(), [1.0, 1e-17])

    def test_comparison(self):
        x = ExtReal(np.array([1.0, 2.0]), np.array([1e-20, -1e-20]))
        assert (x > np.array([1.0, 2.0])).tolist() == [True, False]
        assert (x < 2.0).tolist() == [True, True]

    def test_from_mpf_round_trip(self):
        with mpmath.workdps(40):
            value = mpmath.mpf(2) / 7
            assert abs(ExtReal.from_mpf(value).to_mpf() - value) < mpmath.mpf("1e-32")


class TestPolynomials:
    def test_legendre(self):
        value, derivative = opoly_eval(Family.LEGENDRE, 2, None, 0.5)
        assert float(value.to_float()) == -0.125
        assert float(derivative.to_float()) == 1.5

    def test_laguerre(self):
        value, derivative = opoly_eval(Family.LAGUERRE, 1, {"gamma": 0.0}, 1.0)
        assert float(value.to_float()) == 0.0
        assert float(derivative.to_float()) == -1.0

    def test_jacobi_against_hypergeometric(self):
        value, _ = opoly_eval(Family.JACOBI, 3, {"gamma": 0.5, "zeta": -0.25}, 0.3)
        with mpmath.workdps(40):
            reference = hypergeometric_jacobi(3, 0.5, -0.25, 0.3)
            assert abs(value.to_mpf() - reference) <= mpmath.mpf("1e-28")

    def test_laguerre_overflow(self):
        with pytest.raises(OracleOverflowError):
            opoly_eval(Family.LAGUERRE, 1000, {"gamma": 0.0}, 5000.0)

    def test_degree_zero(self):
        with pytest.raises(OracleFailureError):
            opoly_eval(Family.LEGENDRE, 0, None, 0.5)


class TestRuleOracle:
    def test_legendre_two_points(self):
        rule = rule_oracle(Family.LEGENDRE, 2)
        np.testing.assert_allclose(rule.nodes, [-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)], atol=1e-14)
        np.testing.assert_allclose(rule.weights, 1.0, rtol=1e-14)

    def test_legendre_weight_sum(self):
        rule = rule_oracle(Family.LEGENDRE, 10)
        assert math.fsum(rule.weights) == pytest.approx(2.0, rel=1e-15)

    def test_jacobi_weight_sum(self):
        gamma, zeta = -0.3, 0.25
        rule = rule_oracle(Family.JACOBI, 100, {"gamma": gamma, "zeta": zeta})
        with mpmath.workdps(40):
            total = mpmath.mpf(2) ** (gamma + zeta + 1) * mpmath.beta(gamma + 1, zeta + 1)
        assert math.fsum(rule.weights) == pytest.approx(float(total), rel=1e-14)

    def test_laguerre_moments(self):
        rule = rule_oracle(Family.LAGUERRE, 20, {"gamma": 1.0})
        for m in range(0, 10):
            assert math.fsum(rule.weights * rule.nodes ** m) == pytest.approx(math.gamma(m + 2.0), rel=1e-14)

    def test_order_limit(self):
        with pytest.raises(OracleFailureError):
            rule_oracle(Family.LEGENDRE, 2001)


class TestBesselOracle:
    def test_zero_order(self):
        assert float(bessel_oracle_root(0.0, 1).to_float()) == pytest.approx(2.404825557695773, rel=1e-15)

    def test_first_order(self):
        assert float(bessel_oracle_root(1.0, 1).to_float()) == pytest.approx(3.8317059702075123, rel=1e-15)

    def test_tenth_order(self):
        roots = bessel_oracle_roots(10.0, 3).to_float()
        assert roots[0] == pytest.approx(14.475500686554541, rel=1e-15)
        assert roots[2] == pytest.approx(22.0469853646978, rel=1e-14)

    def test_agrees_with_mpmath_zeros(self):
        root = bessel_oracle_root(2.5, 7)
        with mpmath.workdps(40):
            assert abs(root.to_mpf() - mpmath.besseljzero(2.5, 7)) < mpmath.mpf("1e-28")

    def test_invalid_arguments(self):
        with pytest.raises(InvalidArgumentError):
            bessel_oracle_roots(-1.0, 3)
        with pytest.raises(InvalidArgumentError):
            bessel_oracle_root(1.0, 0)
