"""
Кусочно-чебышёвские представления функций

Сетки Чебышёва, барицентрическая интерполяция, переход значения ↔
коэффициенты, адаптивное разбиение, спектральные интегрирование и
дифференцирование, спектральный решатель линейной задачи Коши.

Функции хранятся значениями в узлах; коэффициенты считаются по требованию.
Все вспомогательные матрицы кэшируются и доступны только для чтения.
"""
import math
import warnings
from functools import lru_cache
from typing import Callable, List, Sequence, Tuple

import numpy as np
import scipy.linalg
from numpy.polynomial import chebyshev as npcheb

from numerics.exceptions import (
    InvalidArgumentError,
    LinearSolveError,
    OutOfDomainError,
    ResolutionFailureError,
)
from numerics.models import Interval, PiecewiseCheb, SolverOptions
from utils.logger import solver_logger


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@lru_cache(maxsize=None)
def reference_nodes(k: int) -> np.ndarray:
    """
    Узлы cos(jπ/(k−1)), j = 0..k−1, на [−1, 1] по убыванию

    Синусная форма даёт точную антисимметрию и точный ноль в середине.
    """
    if k < 2:
        raise InvalidArgumentError(f"Chebyshev grid needs k >= 2, got {k}")
    j = np.arange(k, dtype=float)
    nodes = np.sin(np.pi * (k - 1 - 2 * j) / (2 * (k - 1)))
    nodes[0], nodes[-1] = 1.0, -1.0
    return _readonly(nodes)


@lru_cache(maxsize=None)
def barycentric_weights(k: int) -> np.ndarray:
    """Веса (−1)^j с половинными весами на концах"""
    weights = np.where(np.arange(k) % 2 == 0, 1.0, -1.0)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return _readonly(weights)


@lru_cache(maxsize=None)
def _cosine_matrix(k: int) -> np.ndarray:
    # T[l, j] = T_l(x_j) = cos(l·j·π/(k−1))
    idx = np.arange(k)
    return _readonly(np.cos(np.pi * np.outer(idx, idx) / (k - 1)))


@lru_cache(maxsize=None)
def _vals_to_coeffs_matrix(k: int) -> np.ndarray:
    halves = np.ones(k)
    halves[0] = halves[-1] = 0.5
    matrix = (2.0 / (k - 1)) * _cosine_matrix(k) * halves[None, :] * halves[:, None]
    return _readonly(matrix)


@lru_cache(maxsize=None)
def spectral_matrices(k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Матрицы на эталонном отрезке [−1, 1] в пространстве значений

    Returns:
        Tuple: (S, S², D): интегрирование от −1, двукратное
        интегрирование и дифференцирование. S и D точны для степени ≤ k−1,
        S² = S·S только для степени ≤ k−2 (вторая первообразная степени
        k−1 выходит за пространство интерполянтов)
    """
    nodes = reference_nodes(k)
    to_coeffs = _vals_to_coeffs_matrix(k)

    integrate = np.zeros((k + 1, k))
    differentiate = np.zeros((k - 1, k))
    for l in range(k):
        unit = np.zeros(k)
        unit[l] = 1.0
        integrate[:, l] = npcheb.chebint(unit, lbnd=-1)
        differentiate[:, l] = npcheb.chebder(unit)

    S = npcheb.chebvander(nodes, k) @ integrate @ to_coeffs
    S[-1, :] = 0.0
    D = npcheb.chebvander(nodes, k - 2) @ differentiate @ to_coeffs
    return _readonly(S), _readonly(S @ S), _readonly(D)


def cheb_nodes(k: int, iv: Interval) -> np.ndarray:
    """
    k-точечная сетка Чебышёва на отрезке

    Args:
        k: Число узлов (k ≥ 2)
        iv: Отрезок

    Returns:
        np.ndarray: Узлы по убыванию; первый равен iv.hi, последний iv.lo

    Examples:
        >>> cheb_nodes(3, Interval(0.0, 1.0)).tolist()
        [1.0, 0.5, 0.0]
    """
    if k < 2:
        raise InvalidArgumentError(f"Chebyshev grid needs k >= 2, got {k}")
    nodes = iv.midpoint + 0.5 * iv.length * reference_nodes(k)
    nodes[0], nodes[-1] = iv.hi, iv.lo
    return nodes


def piece_nodes(breakpoints: np.ndarray, k: int) -> np.ndarray:
    """Узлы всех подотрезков, массив (m, k)"""
    breakpoints = np.asarray(breakpoints, dtype=float)
    lo, hi = breakpoints[:-1], breakpoints[1:]
    nodes = 0.5 * (lo + hi)[:, None] + 0.5 * (hi - lo)[:, None] * reference_nodes(k)[None, :]
    nodes[:, 0] = hi
    nodes[:, -1] = lo
    return nodes


def _barycentric(values: np.ndarray, xref: np.ndarray) -> np.ndarray:
    # Одна точка на строку значений; суммирование по столбцам поэлементное,
    # поэтому результат для точки не зависит от размера пакета
    k = values.shape[1]
    nodes = reference_nodes(k)
    weights = barycentric_weights(k)

    numerator = np.zeros(xref.shape)
    denominator = np.zeros(xref.shape)
    exact = np.full(xref.shape, -1, dtype=np.intp)
    for j in range(k):
        diff = xref - nodes[j]
        hit = diff == 0.0
        coef = weights[j] / np.where(hit, 1.0, diff)
        numerator += coef * values[:, j]
        denominator += coef
        exact[hit] = j

    result = numerator / denominator
    mask = exact >= 0
    if np.any(mask):
        result[mask] = values[mask, exact[mask]]
    return result


def _reference_points(x: np.ndarray, lo: np.ndarray, hi: np.ndarray, k: int) -> np.ndarray:
    """Координаты точек в [−1, 1]; точка, совпавшая с узлом сетки куска, получает узел точно"""
    xref = np.clip((2.0 * x - (lo + hi)) / (hi - lo), -1.0, 1.0)
    nodes = reference_nodes(k)
    middle = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    for j in range(k):
        if j == 0:
            grid = hi
        elif j == k - 1:
            grid = lo
        else:
            grid = middle + half * nodes[j]
        xref = np.where(grid == x, nodes[j], xref)
    return xref


def bary_eval(values: Sequence[float], iv: Interval, x: float) -> float:
    """
    Значение интерполянта степени k−1 в точке x по барицентрической формуле

    Raises:
        OutOfDomainError: Если x вне iv
    """
    if not iv.contains(x):
        raise OutOfDomainError(f"x = {x} outside [{iv.lo}, {iv.hi}]")
    values = np.asarray(values, dtype=float)[None, :]
    xref = _reference_points(np.array([float(x)]), np.array([iv.lo]), np.array([iv.hi]), values.shape[1])
    return float(_barycentric(values, xref)[0])


def vals_to_coeffs(values) -> np.ndarray:
    """
    Коэффициенты разложения по T_l интерполянта (прямая косинусная сумма)

    Принимает вектор длины k или массив (m, k) построчно.
    """
    values = np.asarray(values, dtype=float)
    return values @ _vals_to_coeffs_matrix(values.shape[-1]).T


def coeffs_to_vals(coeffs) -> np.ndarray:
    """Значения в узлах сетки по коэффициентам Чебышёва"""
    coeffs = np.asarray(coeffs, dtype=float)
    return coeffs @ _cosine_matrix(coeffs.shape[-1])


def needs_split(coeffs: Sequence[float], tol: float, scale: float = 0.0) -> bool:
    """
    Критерий деления: хвостовые коэффициенты велики относительно максимального

    Args:
        coeffs: Коэффициенты Чебышёва куска
        tol: Порог
        scale: Нижняя граница знаменателя (для квадратур: масштаб функции
            на всём отрезке)

    Returns:
        bool: True если max |c_l|/max(c_max, scale) по l ≥ ⌈k/2⌉ превышает tol
    """
    magnitudes = np.abs(np.asarray(coeffs, dtype=float))
    k = magnitudes.size
    if k < 4:
        raise InvalidArgumentError(f"needs_split requires k >= 4, got {k}")
    c_max = max(magnitudes.max(), abs(float(scale)))
    if c_max == 0.0:
        return False
    return bool(magnitudes[math.ceil(k / 2):].max() / c_max > tol)


def _locate(f: PiecewiseCheb, x: np.ndarray) -> np.ndarray:
    index = np.searchsorted(f.breakpoints, x, side="left") - 1
    return np.clip(index, 0, f.pieces - 1)


def evaluate_on_pieces(f: PiecewiseCheb, index: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Значения f в точках x, лежащих на заданных подотрезках"""
    lo = f.breakpoints[index]
    hi = f.breakpoints[index + 1]
    return _barycentric(f.values[index], _reference_points(x, lo, hi, f.order))


def pw_eval(f: PiecewiseCheb, x):
    """
    Значение кусочного представления; точки разбиения относятся к левому куску

    Args:
        f: Кусочно-чебышёвская функция
        x: Точка или массив точек из [γ₁, γ_{m+1}]

    Raises:
        OutOfDomainError: Если хотя бы одна точка вне области определения
    """
    points = np.asarray(x, dtype=float)
    flat = np.atleast_1d(points)
    lo, hi = f.breakpoints[0], f.breakpoints[-1]
    if flat.size and (np.any(~(flat >= lo)) or np.any(~(flat <= hi))):
        raise OutOfDomainError(f"evaluation point outside [{lo}, {hi}]")
    result = evaluate_on_pieces(f, _locate(f, flat), flat)
    if points.ndim == 0:
        return float(result[0])
    return result.reshape(points.shape)


def pw_from_function(g: Callable[[np.ndarray], np.ndarray], breakpoints, k: int) -> PiecewiseCheb:
    """Кусочное представление функции g на заданном разбиении"""
    nodes = piece_nodes(breakpoints, k)
    return PiecewiseCheb(breakpoints, sample(g, nodes.ravel()).reshape(nodes.shape))


def pw_antiderivative(f: PiecewiseCheb, base: float) -> PiecewiseCheb:
    """
    Первообразная F с F(a) = base, непрерывная на стыках подотрезков

    Точна (до округления) для многочленов степени ≤ k−2 на каждом куске.
    """
    S, _, _ = spectral_matrices(f.order)
    half = 0.5 * np.diff(f.breakpoints)
    local = (f.values @ S.T) * half[:, None]
    offsets = np.cumsum(np.concatenate([[float(base)], local[:-1, 0]]))
    return PiecewiseCheb(f.breakpoints, local + offsets[:, None])


def pw_derivative(f: PiecewiseCheb) -> PiecewiseCheb:
    """Спектральная производная на каждом подотрезке"""
    _, _, D = spectral_matrices(f.order)
    half = 0.5 * np.diff(f.breakpoints)
    return PiecewiseCheb(f.breakpoints, (f.values @ D.T) / half[:, None])


def sample(g: Callable, x: np.ndarray) -> np.ndarray:
    """Значения обратного вызова в точках; скалярные функции тоже допускаются"""
    x = np.asarray(x, dtype=float)
    try:
        result = np.asarray(g(x), dtype=float)
    except TypeError:
        result = None
    if result is None or result.shape != x.shape:
        result = np.array([float(g(float(xi))) for xi in x.ravel()]).reshape(x.shape)
    return result


def adaptive_partition(g: Callable, iv: Interval, opts: SolverOptions, scale: float = 0.0) -> List[float]:
    """
    Разбиение отрезка делением пополам, пока хвост коэффициентов g велик

    Args:
        g: Векторизованная функция на iv
        iv: Отрезок
        opts: Параметры (k, coeff_tol, max_depth)
        scale: Абсолютный масштаб для needs_split (0: только относительный)

    Returns:
        List[float]: Возрастающие точки разбиения, включая концы

    Raises:
        ResolutionFailureError: Если глубина превысила max_depth
    """
    breakpoints = [iv.lo]
    stack = [(iv.lo, iv.hi, 0)]

    while stack:
        lo, hi, depth = stack.pop()
        values = sample(g, cheb_nodes(opts.k, Interval(lo, hi)))
        if np.all(np.isfinite(values)) and not needs_split(vals_to_coeffs(values), opts.coeff_tol, scale):
            breakpoints.append(hi)
            continue

        if depth >= opts.max_depth:
            raise ResolutionFailureError(
                f"adaptive partition did not resolve [{lo!r}, {hi!r}] within {opts.max_depth} levels",
                interval=(lo, hi),
            )
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))

    solver_logger.debug(f"adaptive partition of [{iv.lo:g}, {iv.hi:g}]: {len(breakpoints) - 1} pieces")
    return breakpoints


def spectral_linear_ivp_full(
    p: np.ndarray,
    q: np.ndarray,
    r: np.ndarray,
    iv: Interval,
    d0: float,
    d0p: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Решение δ″ + pδ′ + qδ = r с δ(lo) = d0, δ′(lo) = d0p

    Неизвестная: δ″ в узлах; δ′ и δ получаются спектральным интегрированием.

    Returns:
        Tuple: (δ, δ′, δ″) в узлах сетки iv

    Raises:
        LinearSolveError: Вырожденная или плохо обусловленная система
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    r = np.asarray(r, dtype=float)
    k = r.size
    S, S2, _ = spectral_matrices(k)
    h = 0.5 * iv.length
    offset = h * (reference_nodes(k) + 1.0)

    system = np.eye(k) + h * p[:, None] * S + (h * h) * q[:, None] * S2
    rhs = r - p * d0p - q * (d0 + d0p * offset)
    if not (np.all(np.isfinite(system)) and np.all(np.isfinite(rhs))):
        raise LinearSolveError("non-finite spectral system", condition=float("inf"))

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
            sigma = scipy.linalg.solve(system, rhs, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
        condition = float(np.linalg.cond(system))
        raise LinearSolveError(f"spectral IVP solve failed: {exc}", condition=condition) from exc

    if not np.all(np.isfinite(sigma)):
        raise LinearSolveError("spectral IVP produced non-finite values", condition=float(np.linalg.cond(system)))

    delta1 = d0p + h * (S @ sigma)
    delta = d0 + d0p * offset + (h * h) * (S2 @ sigma)
    delta1[-1] = d0p
    delta[-1] = d0
    return delta, delta1, sigma


def spectral_linear_ivp(
    p: np.ndarray,
    q: np.ndarray,
    r: np.ndarray,
    iv: Interval,
    d0: float,
    d0p: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Спектральный решатель линейной задачи Коши на одном подотрезке

    Args:
        p, q, r: Коэффициенты и правая часть в k узлах сетки iv
        iv: Подотрезок
        d0, d0p: δ(iv.lo) и δ′(iv.lo)

    Returns:
        Tuple[np.ndarray, np.ndarray]: (δ, δ′) в узлах

    Examples:
        >>> delta, delta1 = spectral_linear_ivp(np.zeros(8), np.zeros(8), np.full(8, 2.0), Interval(0, 1), 0, 0)
        >>> round(delta[0], 12), round(delta1[0], 12)
        (1.0, 2.0)
    """
    delta, delta1, _ = spectral_linear_ivp_full(p, q, r, iv, d0, d0p)
    return delta, delta1
