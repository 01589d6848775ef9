"""
Общие фикстуры тестов
"""
import numpy as np
import pytest

from numerics import CoefficientProblem, Interval, SolverOptions
from services.problem_service import problem_service


def constant_problem(lam: float = 100.0) -> CoefficientProblem:
    """y″ + λ²y = 0 на [0, 1]"""
    return CoefficientProblem(q=lambda t: np.ones_like(np.asarray(t, dtype=float)), lam=lam, iv=Interval(0.0, 1.0),
                              name="constant")


@pytest.fixture(scope="session")
def options() -> SolverOptions:
    return SolverOptions(k=16)


@pytest.fixture(scope="session")
def cosine_solution(options):
    """y = cos(100t): фаза α = 100t, амплитуда d₁ = 10, d₂ = π/2"""
    return problem_service.solve(constant_problem(100.0), 1.0, 0.0, options)


@pytest.fixture(scope="session")
def artificial_solution(options):
    """Тестовая задача при λ = 10³ (y(0) = 0, y′(0) = λ)"""
    return problem_service.artificial(1e3, options)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
