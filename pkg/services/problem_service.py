"""
Сервис решения задачи y″ + λ²q(t)y = 0: фаза, обращение, амплитуда, корни
"""
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from numerics import (
    Amplitude,
    CoefficientProblem,
    Interval,
    InversePhase,
    PhaseFunction,
    RootResult,
    SolverOptions,
    build_phase,
    count_open_roots,
    count_roots,
    extract_roots,
    fit_amplitude,
    fit_amplitude_at,
    invert_phase,
    kth_root,
    make_amplitude,
    root_results,
)
from utils.helpers import format_duration
from utils.logger import solver_logger


@dataclass(frozen=True)
class PhaseSolution:
    """
    Всё, что нужно для корней конкретного решения

    Attributes:
        phase: Фазовая функция
        inverse: α⁻¹
        amplitude: (c₁, c₂, d₁, d₂) решения
        count: Число корней на [a, b] (нумерация kth и roots)
        open_count: Число корней на (a, b], без корня в точке a
        build_seconds: Время построения фазы
        invert_seconds: Время обращения
    """

    phase: PhaseFunction
    inverse: InversePhase
    amplitude: Amplitude
    count: int
    open_count: int
    build_seconds: float = 0.0
    invert_seconds: float = 0.0

    def roots(self, ks=None, threads: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """Корни и y′ в корнях для номеров ks (по умолчанию все)"""
        return extract_roots(self.phase, self.inverse, self.amplitude, ks, threads)

    def kth(self, k: int) -> float:
        return kth_root(self.phase, self.inverse, self.amplitude, k)

    @property
    def skipped(self) -> int:
        """1, если корень лежит в самой точке a, иначе 0"""
        return self.count - self.open_count

    def open_roots(self, threads: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """Корни на (a, b] и y′ в них"""
        return self.roots(np.arange(self.skipped + 1, self.count + 1), threads)

    def results(self, ks=None, threads: int = 0) -> List[RootResult]:
        return root_results(self.phase, self.inverse, self.amplitude, ks, threads)


def artificial_problem(lam: float) -> CoefficientProblem:
    """
    Тестовая задача с гладким, но не постоянным коэффициентом на [0, 1]

    q(t) = 1/(0.1 + t²) + λ^{−1/2} sin²(4t)/(0.1 + (t − 0.5)²)⁴
    """
    lam = float(lam)
    bump = lam ** -0.5

    def q(t):
        t = np.asarray(t, dtype=float)
        return 1.0 / (0.1 + t * t) + bump * np.sin(4.0 * t) ** 2 / (0.1 + (t - 0.5) ** 2) ** 4

    return CoefficientProblem(q=q, lam=lam, iv=Interval(0.0, 1.0), name=f"artificial(lambda={lam:g})")


class ProblemService:
    """Сервис построения фазы и корней решения"""

    def solve(
        self,
        problem: CoefficientProblem,
        y_a: float,
        yp_a: float,
        opts: Optional[SolverOptions] = None,
        partition: Optional[Sequence[float]] = None,
        anchor: Optional[float] = None,
    ) -> PhaseSolution:
        """
        Фаза задачи и амплитуда решения с данными Коши (y_a, yp_a)

        Args:
            problem: Задача
            y_a, yp_a: y и y′ в точке привязки
            opts: Параметры решателя
            partition: Начальное разбиение второго прохода
            anchor: Точка привязки данных; None означает левый конец

        Returns:
            PhaseSolution: Фаза, обращение, амплитуда и число корней
        """
        opts = opts or SolverOptions.from_config()
        started = time.perf_counter()
        phase = build_phase(problem, opts, partition)
        built = time.perf_counter()
        inverse = invert_phase(phase, opts)
        inverted = time.perf_counter()

        if anchor is None or anchor == phase.a:
            amplitude = make_amplitude(*fit_amplitude(y_a, yp_a, phase))
        else:
            amplitude = fit_amplitude_at(anchor, y_a, yp_a, phase)
        count = count_roots(phase, amplitude)
        open_count = count_open_roots(phase, amplitude)

        solver_logger.debug(
            f"{problem.name or 'problem'}: {count} roots, build {format_duration(built - started)}, "
            f"invert {format_duration(inverted - built)}"
        )
        return PhaseSolution(
            phase=phase,
            inverse=inverse,
            amplitude=amplitude,
            count=count,
            open_count=open_count,
            build_seconds=built - started,
            invert_seconds=inverted - built,
        )

    def artificial(self, lam: float, opts: Optional[SolverOptions] = None) -> PhaseSolution:
        """Решение тестовой задачи с y(0) = 0, y′(0) = λ"""
        solver_logger.info(f"🚀 Artificial problem, lambda={lam:g}")
        return self.solve(artificial_problem(lam), 0.0, float(lam), opts)


# Глобальный экземпляр сервиса
problem_service = ProblemService()
