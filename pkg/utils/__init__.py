"""
Utils package
Содержит вспомогательные функции: логирование, валидация, helpers
"""

# Logger
from .logger import (
    setup_logger,
    solver_logger,
    log_build,
    log_rule,
    log_error
)

# Validators
from .validators import (
    validate_order,
    validate_jacobi_parameter,
    validate_bessel_order,
    validate_lambda
)

# Helpers
from .helpers import (
    format_real,
    resolve_threads,
    chunk_ranges,
    format_duration
)

__all__ = [
    # Logger
    "setup_logger",
    "solver_logger",
    "log_build",
    "log_rule",
    "log_error",
    # Validators
    "validate_order",
    "validate_jacobi_parameter",
    "validate_bessel_order",
    "validate_lambda",
    # Helpers
    "format_real",
    "resolve_threads",
    "chunk_ranges",
    "format_duration"
]
