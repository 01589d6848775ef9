"""
Handlers package
Содержит обработчики подкоманд CLI и форматирование вывода
"""

from .rule_handlers import handle_legendre, handle_jacobi, handle_laguerre, render_rule
from .root_handlers import handle_bessel, handle_roots
from .output import render_columns, render_json, write_output

__all__ = [
    "handle_legendre",
    "handle_jacobi",
    "handle_laguerre",
    "render_rule",
    "handle_bessel",
    "handle_roots",
    "render_columns",
    "render_json",
    "write_output",
]
