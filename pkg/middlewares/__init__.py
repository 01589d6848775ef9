"""
Middlewares package
Содержит обёртки команд CLI: логирование, время выполнения, коды выхода
"""

from .logging_middleware import CommandMiddleware, EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL

__all__ = [
    "CommandMiddleware",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_NUMERICAL",
]
