"""
Исключения вычислительного ядра

Каждое исключение несёт стабильный код ``code``, его печатает CLI
при численной ошибке (exit code 3).
"""
from typing import Optional, Tuple


class PhaseRootError(Exception):
    """Базовое исключение всех численных ошибок пакета"""

    code: str = "phaseroot-error"


class InvalidArgumentError(PhaseRootError, ValueError):
    """Некорректный аргумент операции"""

    code = "invalid-argument"


class OutOfDomainError(PhaseRootError, ValueError):
    """Точка вне области определения кусочного представления"""

    code = "out-of-domain"


class ResolutionFailureError(PhaseRootError):
    """
    Адаптивное разбиение не сошлось за max_depth делений

    Attributes:
        interval: Подотрезок (lo, hi), который не удалось разрешить
    """

    code = "resolution-failure"

    def __init__(self, message: str, interval: Optional[Tuple[float, float]] = None):
        super().__init__(message)
        self.interval = interval


class LinearSolveError(PhaseRootError):
    """
    Вырожденная или плохо обусловленная система спектрального метода

    Attributes:
        condition: Оценка числа обусловленности (inf если не удалось оценить)
    """

    code = "linear-solve-failure"

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(message)
        self.condition = condition


class NonPositiveCoefficientError(PhaseRootError):
    """Коэффициент q(t) неположителен во внутренней точке"""

    code = "nonpositive-coefficient"


class DegeneratePhaseError(PhaseRootError):
    """α′(t) ≤ 0 там, где фаза должна быть строго возрастающей"""

    code = "degenerate-phase"


class SeedFailureError(PhaseRootError):
    """Неявный метод трапеций вывел β в неположительную область"""

    code = "seed-failure"


class IterateRejectedError(PhaseRootError):
    """Поправка Ньютона–Канторовича сделала β ≤ 0"""

    code = "iterate-rejected"


class ConvergenceFailureError(PhaseRootError):
    """Итерации Ньютона–Канторовича не сошлись"""

    code = "convergence-failure"


class InversionFailureError(PhaseRootError):
    """Не удалось обратить фазовую функцию (фаза повреждена)"""

    code = "inversion-failure"


class DegenerateSolutionError(PhaseRootError):
    """Нулевые начальные данные: решение тождественно равно нулю"""

    code = "degenerate-solution"


class RootIndexError(PhaseRootError, IndexError):
    """Номер корня вне диапазона 1..count"""

    code = "root-index-out-of-range"


class SeriesDivergenceError(PhaseRootError):
    """Асимптотический ряд не убывает до нужной точности"""

    code = "series-divergence"


class InternalBoundViolationError(PhaseRootError):
    """Нарушена априорная оценка числа корней на отрезке"""

    code = "internal-bound-violation"


class OracleFailureError(PhaseRootError):
    """Эталонный расчёт повышенной точности не сошёлся"""

    code = "oracle-failure"


class OracleOverflowError(OracleFailureError, OverflowError):
    """Переполнение при вычислении рекуррентности в двойной-двойной точности"""

    code = "overflow"


# Ошибки, после которых построение фазы делит подотрезок пополам
RECOVERABLE_PIECE_ERRORS = (
    SeedFailureError,
    IterateRejectedError,
    ConvergenceFailureError,
    LinearSolveError,
)
