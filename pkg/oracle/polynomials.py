"""
Эталонные правила Гаусса в двойной-двойной точности

Многочлены считаются трёхчленными рекуррентными соотношениями, узлы
уточняются методом Ньютона от начальных приближений scipy, нормировочные
множители весов берутся из mpmath.
"""
from typing import Mapping, Optional, Tuple

import mpmath
import numpy as np
from scipy.special import roots_genlaguerre, roots_jacobi, roots_legendre

from numerics import Family, OracleFailureError, OracleOverflowError, QuadratureRule
from oracle.extreal import ExtReal
from utils.logger import solver_logger

MAX_ORACLE_ORDER = 2000
NEWTON_STEPS = 10
# |p/p′| после уточнения относительно среднего шага между узлами
CERTIFY_TOL = 1e-26
_MP_DIGITS = 40


def _params(family: Family, params: Optional[Mapping[str, float]]) -> Tuple[float, float]:
    params = params or {}
    if family is Family.LEGENDRE:
        return 0.0, 0.0
    return float(params.get("gamma", 0.0)), float(params.get("zeta", 0.0))


def _checked(value: ExtReal, family: Family, n: int) -> ExtReal:
    if not value.is_finite():
        raise OracleOverflowError(f"{family.value} polynomial of degree {n} overflows double-double range")
    return value


def _legendre(n: int, t: ExtReal) -> Tuple[ExtReal, ExtReal]:
    previous, current = ExtReal(np.ones(t.shape)), t
    for k in range(1, n):
        following = ((2 * k + 1) * t * current - k * previous) / float(k + 1)
        previous, current = current, following
    derivative = n * (previous - t * current) / (1.0 - t * t)
    return current, derivative


def _jacobi(n: int, gamma: float, zeta: float, t: ExtReal) -> Tuple[ExtReal, ExtReal]:
    a, b = ExtReal(gamma), ExtReal(zeta)
    s = a + b
    previous = ExtReal(np.ones(t.shape))
    current = (s + 2.0) * 0.5 * t + (a - b) * 0.5
    difference_of_squares = a * a - b * b
    for k in range(1, n):
        c = s + 2.0 * k
        scale = 2.0 * (k + 1) * (s + (k + 1)) * c
        slope = (c + 1.0) * (c + 2.0) * c / scale
        shift = (c + 1.0) * difference_of_squares / scale
        lag = 2.0 * (a + k) * (b + k) * (c + 2.0) / scale
        following = (slope * t + shift) * current - lag * previous
        previous, current = current, following
    c = s + 2.0 * n
    derivative = (
        n * ((a - b) - c * t) * current + 2.0 * (a + n) * (b + n) * previous
    ) / (c * (1.0 - t * t))
    return current, derivative


def _laguerre(n: int, gamma: float, t: ExtReal) -> Tuple[ExtReal, ExtReal]:
    a = ExtReal(gamma)
    previous = ExtReal(np.ones(t.shape))
    current = 1.0 + a - t
    for k in range(1, n):
        following = ((2.0 * k + 1.0 + a - t) * current - (a + k) * previous) / float(k + 1)
        previous, current = current, following
    derivative = (n * current - (a + n) * previous) / t
    return current, derivative


def opoly_eval(family, n: int, params: Optional[Mapping[str, float]], t) -> Tuple[ExtReal, ExtReal]:
    """
    Значение и производная классического многочлена степени n ≥ 1

    Нормировки: P_n(1) = 1 у Лежандра, P_n^{(γ,ζ)}(1) = (γ+1)_n/n! у Якоби,
    L_n^{(γ)}(0) = (γ+1)_n/n! у Лагерра. Производная берётся из
    дифференциального тождества и не определена в t = ±1 (Лежандр, Якоби)
    и t = 0 (Лагерр).

    Args:
        family: Семейство
        n: Степень
        params: {"gamma": γ, "zeta": ζ} (лишние ключи игнорируются)
        t: Точки (float, массив или ExtReal)

    Raises:
        OracleOverflowError: Значения вышли за пределы double
    """
    family = Family(family)
    if n < 1:
        raise OracleFailureError(f"oracle polynomials need degree n >= 1, got {n}")
    t = t if isinstance(t, ExtReal) else ExtReal(t)
    gamma, zeta = _params(family, params)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if family is Family.LEGENDRE:
            value, derivative = _legendre(n, t)
        elif family is Family.JACOBI:
            value, derivative = _jacobi(n, gamma, zeta, t)
        else:
            value, derivative = _laguerre(n, gamma, t)
    return _checked(value, family, n), _checked(derivative, family, n)


def hypergeometric_jacobi(n: int, gamma: float, zeta: float, t: float):
    """
    P_n^{(γ,ζ)}(t) = (γ+1)_n/n! · ₂F₁(−n, n+γ+ζ+1; γ+1; (1−t)/2) в mpmath

    Examples:
        >>> float(hypergeometric_jacobi(2, 0.0, 0.0, 0.5))
        -0.125
    """
    with mpmath.workdps(_MP_DIGITS):
        gamma, zeta, t = mpmath.mpf(gamma), mpmath.mpf(zeta), mpmath.mpf(t)
        prefactor = mpmath.rf(gamma + 1, n) / mpmath.factorial(n)
        return prefactor * mpmath.hyp2f1(-n, n + gamma + zeta + 1, gamma + 1, (1 - t) / 2)


def _seeds(family: Family, n: int, gamma: float, zeta: float) -> np.ndarray:
    if family is Family.LEGENDRE:
        return roots_legendre(n)[0]
    if family is Family.JACOBI:
        return roots_jacobi(n, gamma, zeta)[0]
    return roots_genlaguerre(n, gamma)[0]


def _weight_prefactor(family: Family, n: int, gamma: float, zeta: float) -> ExtReal:
    with mpmath.workdps(_MP_DIGITS):
        if family is Family.LEGENDRE:
            return ExtReal.from_mpf(mpmath.mpf(2))
        if family is Family.JACOBI:
            g, z = mpmath.mpf(gamma), mpmath.mpf(zeta)
            factor = (
                mpmath.power(2, g + z + 1)
                * mpmath.gamma(n + g + 1)
                * mpmath.gamma(n + z + 1)
                / (mpmath.gamma(n + 1) * mpmath.gamma(n + g + z + 1))
            )
            return ExtReal.from_mpf(factor)
        g = mpmath.mpf(gamma)
        return ExtReal.from_mpf(mpmath.gamma(n + g + 1) / mpmath.factorial(n))


def rule_oracle(family, n: int, params: Optional[Mapping[str, float]] = None) -> QuadratureRule:
    """
    Эталонное правило Гаусса: узлы и веса с точностью около 1e−30

    Args:
        family: Семейство
        n: Порядок, 1 ≤ n ≤ 2000
        params: {"gamma": γ, "zeta": ζ}

    Raises:
        OracleFailureError: Ньютон не сошёлся, узлы не различимы или n вне диапазона
        OracleOverflowError: Многочлен не представим в double (Лагерр при больших n)
    """
    family = Family(family)
    if not (1 <= int(n) <= MAX_ORACLE_ORDER):
        raise OracleFailureError(f"oracle order must lie in [1, {MAX_ORACLE_ORDER}], got {n}")
    n = int(n)
    gamma, zeta = _params(family, params)

    x = ExtReal(_seeds(family, n, gamma, zeta))
    step = None
    for _ in range(NEWTON_STEPS):
        value, derivative = opoly_eval(family, n, params, x)
        step = value / derivative
        x = x - step
        if np.all(np.abs(step.hi) <= 1e-32 * np.maximum(1.0, np.abs(x.hi))):
            break

    if n > 1:
        spacing = float(x.hi[-1] - x.hi[0]) / (n - 1)
    else:
        spacing = 1.0
    residual = np.abs(step.hi)
    if not np.all(residual <= CERTIFY_TOL * spacing):
        worst = int(np.argmax(residual))
        raise OracleFailureError(
            f"{family.value} oracle n={n}: node {worst + 1} not certified "
            f"(|p/p'| = {residual[worst]:.3e}, spacing {spacing:.3e})"
        )
    if n > 1 and not np.all(np.diff(x.to_float()) > 0):
        raise OracleFailureError(f"{family.value} oracle n={n}: nodes are not distinct")

    _, derivative = opoly_eval(family, n, params, x)
    prefactor = _weight_prefactor(family, n, gamma, zeta)
    if family is Family.LAGUERRE:
        weights = prefactor / (x * derivative * derivative)
    else:
        weights = prefactor / ((1.0 - x * x) * derivative * derivative)
    if not weights.is_finite():
        raise OracleOverflowError(f"{family.value} oracle n={n}: weights overflow")

    solver_logger.debug(f"oracle {family.value} n={n} certified, spacing {spacing:.3e}")
    return QuadratureRule(
        n=n,
        nodes=x.to_float(),
        weights=weights.to_float(),
        family=family,
        gamma=gamma,
        zeta=zeta,
    )
