"""
Services package
Содержит прикладную логику: решение задачи, квадратуры Гаусса, корни Бесселя
"""

from .problem_service import ProblemService, PhaseSolution, problem_service, artificial_problem
from .gauss_service import (
    GaussService,
    gauss_service,
    family_options,
    gamma_ratio,
    legendre_rule,
    jacobi_rule,
    laguerre_rule,
)
from .bessel_service import (
    BesselService,
    bessel_service,
    bessel_roots,
    bessel_turning_values,
    mcmahon_guess,
)

__all__ = [
    "ProblemService",
    "PhaseSolution",
    "problem_service",
    "artificial_problem",
    "GaussService",
    "gauss_service",
    "family_options",
    "gamma_ratio",
    "legendre_rule",
    "jacobi_rule",
    "laguerre_rule",
    "BesselService",
    "bessel_service",
    "bessel_roots",
    "bessel_turning_values",
    "mcmahon_guess",
]
