"""
Сервис корней функций Бесселя J_ν

z(u) = J_ν(e^u) решает z″ + (e^{2u} − ν²)z = 0; точка поворота u = log ν
совпадает с левым концом отрезка, данные Коши там дают интегралы
по [0, π] с неосциллирующими подынтегральными функциями.
"""
import math
import time
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from config import Config
from numerics import (
    BesselJob,
    CoefficientProblem,
    InternalBoundViolationError,
    Interval,
    InvalidArgumentError,
    SolverOptions,
    adaptive_partition,
    cheb_nodes,
    pw_antiderivative,
    pw_from_function,
)
from numerics.chebkit import sample
from services.problem_service import problem_service
from utils.logger import solver_logger

# e^{−46} ≈ 1e−20: дальше вклад в интегралы пренебрежимо мал
_TRUNCATION_EXPONENT = 46.0
_SERIES_CUTOFF = 0.5
_ASINH_CUTOFF = 0.1
_QUADRATURE_OPTIONS = SolverOptions(k=30, coeff_tol=1e-14, max_depth=40)


def _g(t: np.ndarray) -> np.ndarray:
    """t² − sin²t без потери точности при малых t"""
    direct = t * t - np.sin(t) ** 2
    small = t < _SERIES_CUTOFF
    if np.any(small):
        ts = t[small]
        series = np.zeros(ts.shape)
        # Σ_{k≥2} (−1)^k 2^{2k−1} t^{2k} / (2k)!
        square = ts ** 2
        for k in range(2, 22):
            series += (-1.0) ** k * 2.0 ** (2 * k - 1) * square ** k / math.factorial(2 * k)
        direct = direct.copy()
        direct[small] = series
    return direct


def _asinh_minus_identity(w: np.ndarray) -> np.ndarray:
    result = np.arcsinh(w) - w
    small = w < _ASINH_CUTOFF
    if np.any(small):
        ws = w[small]
        series = np.zeros(ws.shape)
        coefficient = 1.0
        for n in range(1, 12):
            coefficient *= -(2 * n - 1) / (2 * n)
            series += coefficient * ws ** (2 * n + 1) / (2 * n + 1)
        result = result.copy()
        result[small] = series
    return result


def _exponent(t) -> np.ndarray:
    """F(t) = asinh(w) − w cos t, w = √(t² − sin²t)/sin t"""
    t = np.asarray(t, dtype=float)
    flat = np.atleast_1d(t)
    positive = flat > 0
    result = np.zeros(flat.shape)
    if np.any(positive):
        tp = flat[positive]
        w = np.sqrt(_g(tp)) / np.sin(tp)
        result[positive] = _asinh_minus_identity(w) + w * 2.0 * np.sin(0.5 * tp) ** 2
    return result.reshape(t.shape)


def _slope_factor(t) -> np.ndarray:
    """(t − sin t cos t)/√(t² − sin²t), равно 0 при t = 0"""
    t = np.asarray(t, dtype=float)
    flat = np.atleast_1d(t)
    result = np.zeros(flat.shape)
    positive = flat > 0
    if np.any(positive):
        tp = flat[positive]
        numerator = tp - np.sin(tp) * np.cos(tp)
        small = tp < _SERIES_CUTOFF
        if np.any(small):
            ts = tp[small]
            series = np.zeros(ts.shape)
            # Σ_{k≥1} (−1)^{k+1} (2t)^{2k+1} / (2(2k+1)!)
            for k in range(1, 20):
                series += (-1.0) ** (k + 1) * (2.0 * ts) ** (2 * k + 1) / (2.0 * math.factorial(2 * k + 1))
            numerator[small] = series
        result[positive] = numerator / np.sqrt(_g(tp))
    return result.reshape(t.shape)


def _truncation_point(nu: float) -> float:
    target = _TRUNCATION_EXPONENT / nu
    upper = math.pi - 1e-12
    if _exponent(upper) <= target:
        return upper
    return brentq(lambda t: float(_exponent(t)) - target, 1e-300, upper, xtol=1e-15, rtol=1e-15)


def _integrate(g, iv: Interval) -> Tuple[float, int]:
    """
    ∫g по iv и число узлов; хвост коэффициентов сравнивается с масштабом g
    на всём отрезке, а не на куске

    Raises:
        ResolutionFailureError: g не разрешается за max_depth делений
    """
    scale = float(np.max(np.abs(sample(g, cheb_nodes(_QUADRATURE_OPTIONS.k, iv)))))
    breakpoints = adaptive_partition(g, iv, _QUADRATURE_OPTIONS, scale=scale)
    values = pw_from_function(g, breakpoints, _QUADRATURE_OPTIONS.k)
    return pw_antiderivative(values, 0.0).right_value, values.node_count


def bessel_turning_values(nu: float) -> Tuple[float, float]:
    """
    J_ν(ν) и J_ν′(ν) по интегральным представлениям

    J_ν(ν) = (1/π)∫₀^π e^{−νF(t)} dt,
    J_ν′(ν) = (1/π)∫₀^π (t − sin t cos t)/√(t² − sin²t) · e^{−νF(t)} dt;
    отрезок обрезается там, где νF = 46.

    Raises:
        InvalidArgumentError: ν < 1

    Examples:
        >>> round(bessel_turning_values(1.0)[0], 12)
        0.440050585745
    """
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 1.0):
        raise InvalidArgumentError(f"Bessel order must satisfy nu >= 1, got {nu}")

    iv = Interval(0.0, _truncation_point(nu))
    value, nodes = _integrate(lambda t: np.exp(-nu * _exponent(t)), iv)
    slope, _ = _integrate(lambda t: _slope_factor(t) * np.exp(-nu * _exponent(t)), iv)
    solver_logger.debug(f"turning-point integrals for nu={nu:g}: {nodes} nodes on [0, {iv.hi:.6g}]")
    return value / math.pi, slope / math.pi


def turning_point_nodes(nu: float) -> int:
    """Число узлов квадратуры для J_ν(ν); не зависит от ν"""
    iv = Interval(0.0, _truncation_point(float(nu)))
    return _integrate(lambda t: np.exp(-nu * _exponent(t)), iv)[1]


def mcmahon_guess(nu: float, k: int) -> float:
    """
    Асимптотика Мак-Магона для k-го корня J_ν (точна при k ≫ ν)
    """
    beta = (k + 0.5 * nu - 0.25) * math.pi
    mu = 4.0 * nu * nu
    eight_beta = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / eight_beta
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eight_beta ** 3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * eight_beta ** 5)
    )


class BesselService:
    """Сервис корней функций Бесселя"""

    def bessel_roots(self, job: BesselJob, opts: Optional[SolverOptions] = None, threads: int = 0) -> np.ndarray:
        """
        Первые job.count положительных корней J_ν по возрастанию

        Raises:
            InternalBoundViolationError: На отрезке меньше корней, чем count
        """
        opts = opts or SolverOptions.from_config(k=Config.BESSEL_ORDER_K)
        nu = job.nu
        started = time.perf_counter()
        solver_logger.info(f"🚀 Bessel roots nu={nu:g}, count={job.count}")

        problem = CoefficientProblem.from_total(
            lambda u: np.exp(2.0 * np.asarray(u, dtype=float)) - nu * nu,
            job.interval,
            positive=False,
            name=f"bessel(nu={nu:g})",
        )
        value, slope = bessel_turning_values(nu)
        # dz/du = x J′(x) при x = e^u = ν
        solution = problem_service.solve(problem, value, nu * slope, opts)
        if solution.count < job.count:
            raise InternalBoundViolationError(
                f"interval holds {solution.count} roots of J_{nu:g}, requested {job.count}"
            )

        u_roots, _ = solution.roots(np.arange(1, job.count + 1), threads)
        solver_logger.info(
            f"✅ Bessel roots nu={nu:g}: {job.count} roots in {time.perf_counter() - started:.3f}s"
        )
        return np.exp(u_roots)


# Глобальный экземпляр сервиса
bessel_service = BesselService()

bessel_roots = bessel_service.bessel_roots
