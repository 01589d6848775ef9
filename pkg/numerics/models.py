"""
Типы данных вычислительного ядра

Числовые контейнеры: неизменяемые dataclass'ы поверх numpy-массивов,
параметры решателя и вывода: pydantic-модели с валидацией полей.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import Config
from numerics.exceptions import InvalidArgumentError, NonPositiveCoefficientError


def _frozen_array(data, ndim: int) -> np.ndarray:
    array = np.array(data, dtype=float, copy=True)
    if ndim == 2:
        array = np.atleast_2d(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Interval:
    """Отрезок [lo, hi] с конечными концами и lo < hi"""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidArgumentError(f"Interval endpoints must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise InvalidArgumentError(f"Interval requires lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class PiecewiseCheb:
    """
    Функция на [γ₁, γ_{m+1}], заданная значениями на k-точечных
    чебышёвских сетках m смежных подотрезков

    Attributes:
        breakpoints: Строго возрастающие точки разбиения (m+1 штук)
        values: Массив (m, k); строка i хранит значения на сетке i-го подотрезка
            в естественном (убывающем) порядке узлов
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        breakpoints = _frozen_array(self.breakpoints, 1)
        values = _frozen_array(self.values, 2)

        if breakpoints.ndim != 1 or breakpoints.size < 2:
            raise InvalidArgumentError("PiecewiseCheb needs at least two breakpoints")
        if not np.all(np.diff(breakpoints) > 0):
            raise InvalidArgumentError("PiecewiseCheb breakpoints must be strictly ascending")
        if values.shape[0] != breakpoints.size - 1:
            raise InvalidArgumentError(
                f"PiecewiseCheb has {breakpoints.size - 1} pieces but {values.shape[0]} value rows"
            )
        if values.shape[1] < 2:
            raise InvalidArgumentError("PiecewiseCheb order must be at least 2")

        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return self.values.shape[1]

    @property
    def pieces(self) -> int:
        return self.values.shape[0]

    @property
    def node_count(self) -> int:
        return self.values.size

    @property
    def domain(self) -> Interval:
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    def piece_interval(self, index: int) -> Interval:
        return Interval(self.breakpoints[index], self.breakpoints[index + 1])

    @property
    def left_value(self) -> float:
        return float(self.values[0, -1])

    @property
    def right_value(self) -> float:
        return float(self.values[-1, 0])


class SolverOptions(BaseModel):
    """
    Параметры построения фазовой функции

    trap_steps=None означает 4k шагов метода трапеций на подотрезок,
    ivp_k=None означает порядок max(k, 16) для прохода с оконным коэффициентом.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(16, ge=4, le=64)
    coeff_tol: float = Field(1e-13, gt=0)
    nk_tol: float = Field(1e-14, gt=0)
    nk_max_iters: int = Field(12, ge=1)
    trap_steps: Optional[int] = Field(None, ge=1)
    newton_inv_tol: float = Field(1e-15, gt=0)
    max_depth: int = Field(50, ge=1)
    refine: bool = True
    ivp_k: Optional[int] = Field(None, ge=4, le=64)
    nk_residual_tol: float = Field(1e-9, gt=0)
    threads: int = Field(0, ge=0)

    @property
    def steps(self) -> int:
        return self.trap_steps if self.trap_steps is not None else 4 * self.k

    @property
    def window_k(self) -> int:
        return self.ivp_k if self.ivp_k is not None else max(self.k, 16)

    def window_options(self) -> "SolverOptions":
        """Параметры прохода с оконным коэффициентом (всегда адаптивного)"""
        return self.model_copy(update={"k": self.window_k, "refine": True, "trap_steps": None})

    def with_order(self, k: int) -> "SolverOptions":
        return SolverOptions(**{**self.model_dump(), "k": k})

    @classmethod
    def from_config(cls, **overrides) -> "SolverOptions":
        """Параметры по умолчанию из переменных окружения (Config)"""
        settings = dict(
            k=Config.DEFAULT_ORDER_K,
            coeff_tol=Config.COEFF_TOL,
            nk_tol=Config.NK_TOL,
            nk_max_iters=Config.NK_MAX_ITERS,
            max_depth=Config.MAX_DEPTH,
            threads=Config.THREADS,
        )
        settings.update(overrides)
        return cls(**settings)


@dataclass(frozen=True)
class CoefficientProblem:
    """
    Уравнение y″ + λ²q(t)y = 0 на отрезке iv

    Attributes:
        q: Векторизованная функция нормированного коэффициента
        lam: Масштаб λ > 0
        iv: Отрезок [a, b]
        positive: False, если коэффициент может обращаться в ноль или менять
            знак у концов (точки поворота); положительность не проверяется
        name: Имя задачи для логов
    """

    q: Callable[[np.ndarray], np.ndarray]
    lam: float
    iv: Interval
    positive: bool = True
    name: str = ""

    def __post_init__(self):
        lam = float(self.lam)
        if not (math.isfinite(lam) and lam > 0):
            raise InvalidArgumentError(f"lambda must be positive and finite, got {lam}")
        object.__setattr__(self, "lam", lam)

    def total(self, t):
        """Полный коэффициент λ²q(t)"""
        return self.lam ** 2 * np.asarray(self.q(np.asarray(t, dtype=float)), dtype=float)

    @classmethod
    def from_total(
        cls,
        Q: Callable[[np.ndarray], np.ndarray],
        iv: Interval,
        positive: bool = True,
        name: str = "",
    ) -> "CoefficientProblem":
        """
        Задача по полному коэффициенту Q с λ = √Q(b) и q = Q/λ²

        Raises:
            NonPositiveCoefficientError: Если Q(b) ≤ 0
        """
        q_b = float(np.asarray(Q(np.array([iv.hi])), dtype=float)[0])
        if not q_b > 0:
            raise NonPositiveCoefficientError(f"Q(b) = {q_b} must be positive to fix the scale")
        lam = math.sqrt(q_b)
        scale = lam * lam
        return cls(q=lambda t: np.asarray(Q(t), dtype=float) / scale, lam=lam, iv=iv, positive=positive, name=name)


@dataclass(frozen=True)
class PhaseFunction:
    """Фазовая функция α с производными α′, α″ и решаемая задача"""

    alpha: PiecewiseCheb
    alpha1: PiecewiseCheb
    alpha2: PiecewiseCheb
    problem: CoefficientProblem

    @property
    def a(self) -> float:
        return float(self.alpha.breakpoints[0])

    @property
    def b(self) -> float:
        return float(self.alpha.breakpoints[-1])

    @property
    def alpha_b(self) -> float:
        return self.alpha.right_value

    @property
    def node_count(self) -> int:
        return self.alpha1.node_count


@dataclass(frozen=True)
class KummerState:
    """Состояние итераций на одном подотрезке: β, β′, β″, невязка, поправка"""

    beta: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray
    residual: np.ndarray
    delta: np.ndarray
    iterations: int = 0


@dataclass(frozen=True)
class InversePhase:
    """α⁻¹ на [α(a), α(b)] в кусочно-чебышёвском представлении"""

    table: PiecewiseCheb

    @property
    def breakpoints(self) -> np.ndarray:
        return self.table.breakpoints

    @property
    def values(self) -> np.ndarray:
        return self.table.values

    @property
    def domain(self) -> Interval:
        return self.table.domain


@dataclass(frozen=True)
class Amplitude:
    """
    Константы, связывающие решение y с фазой:
    y = c₁cos(α)/√α′ + c₂sin(α)/√α′ = d₁sin(α + d₂)/√α′, 0 < d₂ ≤ π
    """

    c1: float
    c2: float
    d1: float
    d2: float


@dataclass(frozen=True)
class RootResult:
    """Корень t_k решения и значение y′(t_k)"""

    k: int
    t: float
    yprime: float
    on_boundary: bool = False


class Family(str, Enum):
    """Семейство квадратурных правил"""

    LEGENDRE = "legendre"
    JACOBI = "jacobi"
    LAGUERRE = "laguerre"


@dataclass(frozen=True)
class QuadratureRule:
    """
    Квадратурное правило Гаусса: узлы по возрастанию, положительные веса

    Параметры γ, ζ не используемые семейством равны нулю.
    """

    n: int
    nodes: np.ndarray
    weights: np.ndarray
    family: Family
    gamma: float = 0.0
    zeta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen_array(self.nodes, 1))
        object.__setattr__(self, "weights", _frozen_array(self.weights, 1))
        object.__setattr__(self, "family", Family(self.family))
        if self.nodes.shape != (self.n,) or self.weights.shape != (self.n,):
            raise InvalidArgumentError(f"rule of order {self.n} needs {self.n} nodes and weights")

    @property
    def params(self) -> Dict[str, float]:
        if self.family is Family.LEGENDRE:
            return {}
        if self.family is Family.LAGUERRE:
            return {"gamma": self.gamma}
        return {"gamma": self.gamma, "zeta": self.zeta}

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Σ w_j f(t_j)"""
        return float(np.sum(self.weights * f(self.nodes)))


@dataclass(frozen=True)
class BesselJob:
    """
    Задание: первые count положительных корней J_ν

    Отрезок в переменной u = log x: [log ν, log((N + ν/2 − ¼)π)].
    """

    nu: float
    count: int
    interval: Interval = field(init=False)

    def __post_init__(self):
        nu = float(self.nu)
        if not (math.isfinite(nu) and nu >= 1.0):
            raise InvalidArgumentError(f"Bessel order must satisfy nu >= 1, got {nu}")
        if int(self.count) != self.count or self.count < 1:
            raise InvalidArgumentError(f"root count must be a positive integer, got {self.count}")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "count", int(self.count))
        upper = math.log((self.count + nu / 2.0 - 0.25) * math.pi)
        object.__setattr__(self, "interval", Interval(math.log(nu), upper))


class OutputSpec(BaseModel):
    """Формат вывода CLI"""

    model_config = ConfigDict(frozen=True)

    format: Literal["text", "json"] = "text"
    precision: int = Field(17, ge=1, le=17)
    destination: Optional[Path] = None
