"""
Сервис квадратурных правил Гаусса–Лежандра, Гаусса–Якоби и Гаусса–Лагерра

Узлы: корни решений преобразованных уравнений y″ + Q y = 0; веса считаются
через производную фазы в корнях; рекуррентности не используются.
"""
import math
import time
from typing import Optional, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import gammaln, gammasgn, poch

from config import Config
from numerics import (
    CoefficientProblem,
    Family,
    Interval,
    InternalBoundViolationError,
    InvalidArgumentError,
    QuadratureRule,
    SeriesDivergenceError,
    SolverOptions,
)
from services.problem_service import PhaseSolution, problem_service
from utils.logger import log_rule, solver_logger

SEED_TERMS = 7
GAMMA_SERIES_MIN_N = 20
GAMMA_SERIES_TERMS = 30

# Корень считается лежащим в правом конце, если до α(b) меньше этого (отн.)
_ENDPOINT_PHASE_TOL = 1e-11
# Корень первой фазы Лагерра в u > −1e−10 относится ко второй фазе
_LAGUERRE_HANDOFF_GAP = 1e-10
# Первая фаза строится, только если её отрезок по u длиннее этого
_LAGUERRE_MIN_SPAN = 1.0

_FAMILY_ORDER = {
    Family.LEGENDRE: lambda: Config.LEGENDRE_ORDER_K,
    Family.JACOBI: lambda: Config.JACOBI_ORDER_K,
    Family.LAGUERRE: lambda: Config.LAGUERRE_ORDER_K,
}


def uses_graded_mesh(n: int) -> bool:
    """Строится ли правило Лежандра порядка n на графлёной сетке"""
    return n >= Config.LEGENDRE_GRADED_MIN_N


def family_options(family: Family, n: Optional[int] = None, **overrides) -> SolverOptions:
    """
    Параметры решателя по умолчанию для семейства

    Лежандр на графлёной сетке (n не задан или n ≥ LEGENDRE_GRADED_MIN_N)
    строится без переразбиения; при меньших n берутся параметры Якоби.
    """
    family = Family(family)
    if family is Family.LEGENDRE and n is not None and not uses_graded_mesh(n):
        family = Family.JACOBI
    settings = {"k": _FAMILY_ORDER[family]()}
    if family is Family.LEGENDRE:
        settings["refine"] = False
    settings.update({key: value for key, value in overrides.items() if value is not None})
    return SolverOptions.from_config(**settings)


def _log_gamma_ratio(gamma: float, zeta: float, chi: float, n: float) -> float:
    args_top = (n + gamma, n + zeta)
    args_bottom = (n + chi, n + gamma + zeta - chi)
    sign = np.prod([gammasgn(a) for a in args_top + args_bottom])
    log_value = sum(gammaln(a) for a in args_top) - sum(gammaln(a) for a in args_bottom)
    return float(sign * math.exp(log_value))


def _gamma_series(gamma: float, zeta: float, chi: float, n: float, max_terms: int) -> float:
    a = chi - gamma
    b = chi - zeta
    c = 1.0 + chi - gamma - zeta - n
    total = 1.0
    term = 1.0
    previous = math.inf
    for m in range(max_terms):
        if c + m == 0.0:
            raise SeriesDivergenceError(f"series denominator vanishes at m = {m}")
        term *= (a + m) * (b + m) / ((m + 1) * (c + m))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total
        if abs(term) > previous:
            raise SeriesDivergenceError(f"series terms grow from m = {m}")
        previous = abs(term)
    raise SeriesDivergenceError(f"series did not converge in {max_terms} terms")


def gamma_ratio(gamma: float, zeta: float, chi: float, n: float, max_terms: int = GAMMA_SERIES_TERMS) -> float:
    """
    Γ(n+γ)Γ(n+ζ) / (Γ(n+χ)Γ(n+γ+ζ−χ))

    При n ≥ 20 считается асимптотический ряд 1 + Σ (χ−γ)_m(χ−ζ)_m / (m!(1+χ−γ−ζ−n)_m);
    если его члены не убывают, а также при n < 20, отношение берётся через log Γ.

    Examples:
        >>> gamma_ratio(0.0, 0.0, 0.0, 100)
        1.0
    """
    if n < GAMMA_SERIES_MIN_N:
        return _log_gamma_ratio(gamma, zeta, chi, n)
    try:
        return _gamma_series(gamma, zeta, chi, n, max_terms)
    except SeriesDivergenceError as e:
        solver_logger.debug(f"⚠️ gamma ratio series fallback ({e})")
        return _log_gamma_ratio(gamma, zeta, chi, n)


def _interior_count(solution: PhaseSolution) -> int:
    """Число корней строго левее правого конца"""
    alpha_b = solution.phase.alpha_b
    count = solution.count
    while count > 0 and alpha_b - (count * math.pi - solution.amplitude.d2) <= _ENDPOINT_PHASE_TOL * max(1.0, alpha_b):
        count -= 1
    return count


def _check_order(n) -> int:
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"rule order must be a positive integer, got {n}")
    return int(n)


def _check_parameter(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > -1.0):
        raise InvalidArgumentError(f"{name} must be a finite number greater than -1, got {value}")
    return value


# ========================================
# LEGENDRE
# ========================================

def _legendre_mesh(nu: float) -> np.ndarray:
    points = Config.LEGENDRE_MESH_POINTS
    mesh = (0.5 * math.pi) * np.power(Config.LEGENDRE_MESH_RATIO, np.arange(-points, 1, dtype=float))
    mesh[-1] = 0.5 * math.pi
    theta_min = max(mesh[0], Config.LEGENDRE_ANCHOR_SCALE / nu)
    start = max(int(np.searchsorted(mesh, theta_min, side="right")) - 1, 0)
    return mesh[start:]


def _legendre_seed(n: int, theta: float) -> Tuple[float, float]:
    # √sinθ·P_n(cosθ) = √θ + aθ^{5/2} + bθ^{9/2} + …
    a = -(n * n / 4.0 + n / 4.0 + 1.0 / 12.0)
    b = n ** 4 / 64.0 + n ** 3 / 32.0 + 5.0 * n * n / 192.0 + n / 96.0 + 1.0 / 1440.0
    root = math.sqrt(theta)
    value = root * (1.0 + a * theta ** 2 + b * theta ** 4)
    derivative = (0.5 + 2.5 * a * theta ** 2 + 4.5 * b * theta ** 4) / root
    return value, derivative


# ========================================
# JACOBI
# ========================================

def _jacobi_weight_factor(theta, gamma: float, zeta: float):
    """r(θ) = sin(θ/2)^{γ+½} cos(θ/2)^{ζ+½}"""
    return np.sin(0.5 * theta) ** (gamma + 0.5) * np.cos(0.5 * theta) ** (zeta + 0.5)


def _jacobi_seed(n: int, gamma: float, zeta: float, theta: float) -> Tuple[float, float]:
    """
    r(θ)·P_n^{(γ,ζ)}(cos θ) и производная по θ из ряда ₂F₁ (7 членов)
    """
    x = math.sin(0.5 * theta) ** 2
    scale = poch(n + 1.0, gamma) / gamma_fn(gamma + 1.0)

    coefficient = 1.0
    series = 0.0
    series_prime = 0.0
    for m in range(SEED_TERMS):
        series += coefficient * x ** m
        if m:
            series_prime += m * coefficient * x ** (m - 1)
        coefficient *= (m - n) * (n + gamma + zeta + 1.0 + m) / ((gamma + 1.0 + m) * (m + 1.0))

    r = float(_jacobi_weight_factor(theta, gamma, zeta))
    log_slope = 0.5 * (gamma + 0.5) / math.tan(0.5 * theta) - 0.5 * (zeta + 0.5) * math.tan(0.5 * theta)
    value = r * scale * series
    derivative = r * scale * (log_slope * series + series_prime * 0.5 * math.sin(theta))
    return value, derivative


# ========================================
# LAGUERRE
# ========================================

def _laguerre_series(n: int, gamma: float, t: float) -> Tuple[float, float]:
    """L_n^{(γ)}(t) и L′ из ряда ₁F₁(−n; γ+1; t) (7 членов)"""
    scale = poch(n + 1.0, gamma) / gamma_fn(gamma + 1.0)
    coefficient = 1.0
    series = 0.0
    series_prime = 0.0
    for m in range(SEED_TERMS):
        series += coefficient * t ** m
        if m:
            series_prime += m * coefficient * t ** (m - 1)
        coefficient *= (m - n) / ((gamma + 1.0 + m) * (m + 1.0))
    return scale * series, scale * series_prime


def _laguerre_seed_point(n: int, gamma: float) -> float:
    """
    Точка t, в которой ряд из SEED_TERMS членов точен до округления,
    а L_n^{(γ)} ещё далека от первого корня (n·t ≤ (γ+1)/4)
    """
    m = SEED_TERMS
    tail = math.factorial(m) * poch(gamma + 1.0, m) / float(n) ** m
    t_series = (1e-17 * tail) ** (1.0 / m)
    t_root = 0.25 * (gamma + 1.0) / n
    return max(min(t_series, t_root), math.exp(Config.LAGUERRE_LEFT_END))


def _laguerre_bound(n: int, gamma: float) -> float:
    """Верхняя оценка наибольшего корня L_n^{(γ)}"""
    return 2.0 * n + gamma - 2.0 + math.sqrt(1.0 + 4.0 * (n - 1.0) * (n + gamma - 1.0))


class GaussService:
    """Сервис построения квадратурных правил"""

    def legendre_rule(self, n: int, opts: Optional[SolverOptions] = None, threads: int = 0) -> QuadratureRule:
        """
        Правило Гаусса–Лежандра порядка n

        u(θ) = √sinθ·P_n(cosθ) решает u″ + (n² + n + ½ + ¼cot²θ)u = 0;
        при n ≥ LEGENDRE_GRADED_MIN_N фаза строится на графлёной сетке
        [θ_min, π/2] порядка 5, ниже это уравнение Якоби при γ = ζ = 0
        на адаптивном разбиении. Узлы нижней половины −cos θ_k, верхняя
        половина получается отражением.

        Args:
            n: Порядок (≥ 1)
            opts: Параметры решателя (по умолчанию параметры семейства пути)
            threads: Число потоков извлечения корней

        Returns:
            QuadratureRule: Узлы по возрастанию и веса

        Raises:
            InternalBoundViolationError: Фаза дала меньше корней, чем n//2
        """
        n = _check_order(n)
        if not uses_graded_mesh(n):
            rule = self.jacobi_rule(n, 0.0, 0.0, opts, threads)
            return QuadratureRule(n=n, nodes=rule.nodes, weights=rule.weights, family=Family.LEGENDRE)

        opts = opts or family_options(Family.LEGENDRE)
        started = time.perf_counter()
        solver_logger.info(f"🚀 Gauss-Legendre n={n} on the graded mesh")

        nu = n + 0.5
        mesh = _legendre_mesh(nu)
        constant = n * n + n + 0.5

        def q(theta):
            theta = np.asarray(theta, dtype=float)
            return (constant + 0.25 / np.tan(theta) ** 2) / (nu * nu)

        problem = CoefficientProblem(
            q=q, lam=nu, iv=Interval(mesh[0], 0.5 * math.pi), name=f"legendre(n={n})"
        )
        y0, yp0 = _legendre_seed(n, mesh[0])
        solution = problem_service.solve(problem, y0, yp0, opts, partition=mesh)

        half = n // 2
        if _interior_count(solution) < half:
            raise InternalBoundViolationError(
                f"Legendre phase holds {solution.count} roots below pi/2, expected {half}"
            )

        theta, derivative = solution.roots(np.arange(1, half + 1), threads)
        lower_nodes = -np.cos(theta)
        lower_weights = 2.0 * np.sin(theta) / derivative ** 2

        middle_nodes = np.empty(0)
        middle_weights = np.empty(0)
        if n % 2:
            d1 = solution.amplitude.d1
            middle_nodes = np.zeros(1)
            middle_weights = np.array([2.0 / (d1 * d1 * solution.phase.alpha1.right_value)])

        nodes = np.concatenate([lower_nodes, middle_nodes, -lower_nodes[::-1]])
        weights = np.concatenate([lower_weights, middle_weights, lower_weights[::-1]])

        log_rule("Legendre", n, time.perf_counter() - started)
        return QuadratureRule(n=n, nodes=nodes, weights=weights, family=Family.LEGENDRE)

    def _jacobi_half(self, n: int, gamma: float, zeta: float, opts: SolverOptions) -> PhaseSolution:
        """Фаза для r·P_n^{(γ,ζ)}(cos θ) на [ε, π/2]; корни θ дают узлы cos θ"""
        nu = n + 0.5 * (gamma + zeta + 1.0)
        epsilon = Config.JACOBI_ANCHOR_SCALE / nu
        left = 0.25 - gamma * gamma
        right = 0.25 - zeta * zeta

        def q(theta):
            theta = np.asarray(theta, dtype=float)
            return (
                nu * nu
                + left / (4.0 * np.sin(0.5 * theta) ** 2)
                + right / (4.0 * np.cos(0.5 * theta) ** 2)
            ) / (nu * nu)

        problem = CoefficientProblem(
            q=q,
            lam=nu,
            iv=Interval(epsilon, 0.5 * math.pi),
            positive=left >= 0.0 and right >= 0.0,
            name=f"jacobi(n={n}, gamma={gamma:g}, zeta={zeta:g})",
        )
        y0, yp0 = _jacobi_seed(n, gamma, zeta, epsilon)
        return problem_service.solve(problem, y0, yp0, opts)

    def jacobi_rule(
        self,
        n: int,
        gamma: float,
        zeta: float,
        opts: Optional[SolverOptions] = None,
        threads: int = 0,
    ) -> QuadratureRule:
        """
        Правило Гаусса–Якоби с весом (1−x)^γ(1+x)^ζ

        Верхние узлы дают корни фазы параметров (γ,ζ), нижние дают корни (ζ,γ)
        через P_n^{(γ,ζ)}(−x) = (−1)^n P_n^{(ζ,γ)}(x). Узел у нуля, который
        ни одна половина не считает внутренним, добирается из верхней фазы.

        Raises:
            InvalidArgumentError: γ ≤ −1 или ζ ≤ −1
            InternalBoundViolationError: Половины не дают n узлов
        """
        n = _check_order(n)
        gamma = _check_parameter(gamma, "gamma")
        zeta = _check_parameter(zeta, "zeta")
        opts = opts or family_options(Family.JACOBI)
        started = time.perf_counter()
        solver_logger.info(f"🚀 Gauss-Jacobi n={n}, gamma={gamma:g}, zeta={zeta:g}")

        symmetric = gamma == zeta
        upper = self._jacobi_half(n, gamma, zeta, opts)
        lower = upper if symmetric else self._jacobi_half(n, zeta, gamma, opts)
        upper_count = _interior_count(upper)
        lower_count = _interior_count(lower)

        prefactor = gamma_ratio(gamma, zeta, 0.0, n + 1) * 2.0 ** (gamma + zeta + 1.0)

        def half_rule(solution: PhaseSolution, count: int, first: float, second: float):
            theta, derivative = solution.roots(np.arange(1, count + 1), threads)
            weights = prefactor * _jacobi_weight_factor(theta, first, second) ** 2 / derivative ** 2
            return theta, weights

        theta_low, w_low = half_rule(lower, lower_count, zeta, gamma)
        theta_up, w_up = half_rule(upper, upper_count, gamma, zeta)

        middle_nodes = np.empty(0)
        middle_weights = np.empty(0)
        found = lower_count + upper_count
        if found == n - 1:
            if symmetric:
                d1 = upper.amplitude.d1
                r = float(_jacobi_weight_factor(0.5 * math.pi, gamma, zeta))
                middle_nodes = np.zeros(1)
                middle_weights = np.array([prefactor * r * r / (d1 * d1 * upper.phase.alpha1.right_value)])
            elif upper_count + 1 <= upper.count:
                theta_mid, w_mid = half_rule(upper, upper_count + 1, gamma, zeta)
                middle_nodes = np.cos(theta_mid[-1:])
                middle_weights = w_mid[-1:]
            elif lower_count + 1 <= lower.count:
                theta_mid, w_mid = half_rule(lower, lower_count + 1, zeta, gamma)
                middle_nodes = -np.cos(theta_mid[-1:])
                middle_weights = w_mid[-1:]
            else:
                raise InternalBoundViolationError(f"Jacobi phases miss the middle node for n={n}")
        elif found != n:
            raise InternalBoundViolationError(
                f"Jacobi phases hold {lower_count} + {upper_count} roots, expected {n}"
            )

        nodes = np.concatenate([-np.cos(theta_low), middle_nodes, np.cos(theta_up[::-1])])
        weights = np.concatenate([w_low, middle_weights, w_up[::-1]])
        order = np.argsort(nodes, kind="stable")

        log_rule("Jacobi", n, time.perf_counter() - started)
        return QuadratureRule(
            n=n, nodes=nodes[order], weights=weights[order], family=Family.JACOBI, gamma=gamma, zeta=zeta
        )

    def _laguerre_first_phase(
        self,
        n: int,
        gamma: float,
        u_min: float,
        poly: float,
        poly_prime: float,
        opts: SolverOptions,
        threads: int,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Корни z(u) = e^{−t/2} t^{γ/2} L(t) на (u_min, 0) и z′ в них"""
        scale1 = n + 0.5 * (gamma + 1.0)

        def q1(u):
            t = np.exp(np.asarray(u, dtype=float))
            return (t * scale1 - 0.25 * t * t - 0.25 * gamma * gamma) / scale1

        problem = CoefficientProblem(
            q=q1, lam=math.sqrt(scale1), iv=Interval(u_min, 0.0), positive=False,
            name=f"laguerre-u(n={n}, gamma={gamma:g})",
        )
        t0 = math.exp(u_min)
        envelope = math.exp(-0.5 * t0) * t0 ** (0.5 * gamma)
        z0 = envelope * poly
        zp0 = z0 * (0.5 * gamma - 0.5 * t0) + t0 * envelope * poly_prime
        phase = problem_service.solve(problem, z0, zp0, opts)

        u_roots, z_prime = phase.roots(None, threads)
        keep = u_roots < -_LAGUERRE_HANDOFF_GAP
        return u_roots[keep], z_prime[keep]

    def laguerre_rule(
        self,
        n: int,
        gamma: float,
        opts: Optional[SolverOptions] = None,
        threads: int = 0,
    ) -> QuadratureRule:
        """
        Обобщённое правило Гаусса–Лагерра с весом t^γ e^{−t}

        Фаза 1 в u = log t на (u_min, 0) даёт узлы из (0, 1); фаза 2
        в v = √t от последнего корня фазы 1 до оценки наибольшего корня
        даёт остальные. Веса считаются в логарифмах.

        Raises:
            InvalidArgumentError: γ ≤ −1
            InternalBoundViolationError: Вторая фаза дала меньше корней
        """
        n = _check_order(n)
        gamma = _check_parameter(gamma, "gamma")
        opts = opts or family_options(Family.LAGUERRE)
        started = time.perf_counter()
        solver_logger.info(f"🚀 Gauss-Laguerre n={n}, gamma={gamma:g}")

        log_ratio = float(gammaln(n + gamma + 1.0) - gammaln(n + 1.0))
        t0 = _laguerre_seed_point(n, gamma)
        u_min = math.log(t0)
        poly, poly_prime = _laguerre_series(n, gamma, t0)

        # ---- Фаза 1: z(u) = e^{−t/2} t^{γ/2} L(t), t = e^u
        scale1 = n + 0.5 * (gamma + 1.0)
        # При Q(0) ≤ 0 коэффициент отрицателен на всём (u_min, 0): там не
        # больше одного корня, его находит фаза 2
        if u_min < -_LAGUERRE_MIN_SPAN and scale1 - 0.25 - 0.25 * gamma * gamma > 0.0:
            u_roots, z_prime = self._laguerre_first_phase(n, gamma, u_min, poly, poly_prime, opts, threads)
        else:
            solver_logger.debug(f"Laguerre n={n}, gamma={gamma:g}: first phase skipped")
            u_roots, z_prime = np.empty(0), np.empty(0)
        first_count = u_roots.size

        t1 = np.exp(u_roots)
        w1 = np.exp(log_ratio - t1 + (gamma + 1.0) * u_roots - 2.0 * np.log(np.abs(z_prime)))

        # ---- Фаза 2: y(v) = e^{−v²/2} v^{γ+½} L(v²)
        if first_count:
            v_start = math.exp(0.5 * u_roots[-1])
            y0 = 0.0
            yp0 = 2.0 * float(z_prime[-1]) / math.sqrt(v_start)
            first_index = 2
        else:
            v_start = math.sqrt(t0)
            t_start = t0
            envelope = math.exp(-0.5 * t_start) * t_start ** (0.5 * gamma + 0.25)
            y0 = envelope * poly
            dy_dt = envelope * ((-0.5 + (0.5 * gamma + 0.25) / t_start) * poly + poly_prime)
            yp0 = 2.0 * v_start * dy_dt
            first_index = 1

        v_end = math.sqrt(_laguerre_bound(n, gamma) + 1.0)
        scale2 = 4.0 * n + 2.0 * gamma + 2.0
        inner = 0.25 * (1.0 - 4.0 * gamma * gamma)

        def q2(v):
            v = np.asarray(v, dtype=float)
            return (scale2 + inner / (v * v) - v * v) / scale2

        phase2_problem = CoefficientProblem(
            q=q2, lam=math.sqrt(scale2), iv=Interval(v_start, v_end), positive=False,
            name=f"laguerre-v(n={n}, gamma={gamma:g})",
        )
        phase2 = problem_service.solve(phase2_problem, y0, yp0, opts)

        remaining = n - first_count
        ks = np.arange(first_index, first_index + remaining)
        if remaining and ks[-1] > phase2.count:
            raise InternalBoundViolationError(
                f"Laguerre phase 2 holds {phase2.count} roots, needs index {int(ks[-1])}"
            )
        v_roots, y_prime = phase2.roots(ks, threads)
        t2 = v_roots * v_roots
        w2 = np.exp(
            log_ratio + math.log(4.0) - t2 + (1.0 + 2.0 * gamma) * np.log(v_roots) - 2.0 * np.log(np.abs(y_prime))
        )

        nodes = np.concatenate([t1, t2])
        weights = np.concatenate([w1, w2])
        log_rule("Laguerre", n, time.perf_counter() - started)
        return QuadratureRule(n=n, nodes=nodes, weights=weights, family=Family.LAGUERRE, gamma=gamma)

    def rule(
        self,
        family: Family,
        n: int,
        gamma: float = 0.0,
        zeta: float = 0.0,
        opts: Optional[SolverOptions] = None,
        threads: int = 0,
    ) -> QuadratureRule:
        """Правило по имени семейства"""
        family = Family(family)
        if family is Family.LEGENDRE:
            return self.legendre_rule(n, opts, threads)
        if family is Family.JACOBI:
            return self.jacobi_rule(n, gamma, zeta, opts, threads)
        return self.laguerre_rule(n, gamma, opts, threads)


# Глобальный экземпляр сервиса
gauss_service = GaussService()

legendre_rule = gauss_service.legendre_rule
jacobi_rule = gauss_service.jacobi_rule
laguerre_rule = gauss_service.laguerre_rule
