"""
Oracle package
Независимые эталоны повышенной точности для проверки решателя
"""

from .extreal import ExtReal, ext_sum, quick_two_sum, split, two_prod, two_sum
from .polynomials import MAX_ORACLE_ORDER, hypergeometric_jacobi, opoly_eval, rule_oracle
from .bessel_oracle import bessel_oracle_root, bessel_oracle_roots

__all__ = [
    "ExtReal",
    "ext_sum",
    "two_sum",
    "quick_two_sum",
    "split",
    "two_prod",
    "MAX_ORACLE_ORDER",
    "opoly_eval",
    "rule_oracle",
    "hypergeometric_jacobi",
    "bessel_oracle_root",
    "bessel_oracle_roots",
]
