"""
Numerics package
Вычислительное ядро: кусочно-чебышёвские функции, фазовая функция
уравнения Куммера, её обращение и извлечение корней
"""

from .exceptions import (
    PhaseRootError,
    InvalidArgumentError,
    OutOfDomainError,
    ResolutionFailureError,
    LinearSolveError,
    NonPositiveCoefficientError,
    DegeneratePhaseError,
    SeedFailureError,
    IterateRejectedError,
    ConvergenceFailureError,
    InversionFailureError,
    DegenerateSolutionError,
    RootIndexError,
    SeriesDivergenceError,
    InternalBoundViolationError,
    OracleFailureError,
    OracleOverflowError,
)
from .models import (
    Interval,
    PiecewiseCheb,
    SolverOptions,
    CoefficientProblem,
    PhaseFunction,
    KummerState,
    InversePhase,
    Amplitude,
    RootResult,
    Family,
    QuadratureRule,
    BesselJob,
    OutputSpec,
)
from .chebkit import (
    cheb_nodes,
    bary_eval,
    vals_to_coeffs,
    coeffs_to_vals,
    needs_split,
    pw_eval,
    pw_antiderivative,
    pw_derivative,
    pw_from_function,
    adaptive_partition,
    spectral_linear_ivp,
)
from .kummer import (
    window_phi,
    windowed_coefficient,
    kummer_residual,
    trap_init,
    nk_refine,
    build_phase,
)
from .phaseinv import invert_phase, inv_eval
from .rootfind import (
    fit_amplitude,
    fit_amplitude_at,
    to_polar,
    make_amplitude,
    count_roots,
    count_open_roots,
    kth_root,
    derivative_at_root,
    extract_roots,
    root_results,
    reconstruct,
)

__all__ = [
    # Errors
    "PhaseRootError",
    "InvalidArgumentError",
    "OutOfDomainError",
    "ResolutionFailureError",
    "LinearSolveError",
    "NonPositiveCoefficientError",
    "DegeneratePhaseError",
    "SeedFailureError",
    "IterateRejectedError",
    "ConvergenceFailureError",
    "InversionFailureError",
    "DegenerateSolutionError",
    "RootIndexError",
    "SeriesDivergenceError",
    "InternalBoundViolationError",
    "OracleFailureError",
    "OracleOverflowError",
    # Models
    "Interval",
    "PiecewiseCheb",
    "SolverOptions",
    "CoefficientProblem",
    "PhaseFunction",
    "KummerState",
    "InversePhase",
    "Amplitude",
    "RootResult",
    "Family",
    "QuadratureRule",
    "BesselJob",
    "OutputSpec",
    # Chebyshev toolkit
    "cheb_nodes",
    "bary_eval",
    "vals_to_coeffs",
    "coeffs_to_vals",
    "needs_split",
    "pw_eval",
    "pw_antiderivative",
    "pw_derivative",
    "pw_from_function",
    "adaptive_partition",
    "spectral_linear_ivp",
    # Phase construction
    "window_phi",
    "windowed_coefficient",
    "kummer_residual",
    "trap_init",
    "nk_refine",
    "build_phase",
    "invert_phase",
    "inv_eval",
    # Roots
    "fit_amplitude",
    "fit_amplitude_at",
    "to_polar",
    "make_amplitude",
    "count_roots",
    "count_open_roots",
    "kth_root",
    "derivative_at_root",
    "extract_roots",
    "root_results",
    "reconstruct",
]
