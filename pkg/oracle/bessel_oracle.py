"""
Эталонные корни J_ν: скобки scipy + уточнение mpmath (34 цифры)

Расстояния между соседними корнями монотонно стремятся к π (сверху при
ν > ½, снизу при ν < ½), поэтому корень k+1 лежит между j_k + π и
j_k + (j_k − j_{k−1}).
"""
import math
from functools import lru_cache
from typing import List

import mpmath
import numpy as np
from scipy.optimize import brentq
from scipy.special import jv

from numerics import InvalidArgumentError, OracleFailureError
from oracle.extreal import ExtReal

_MP_DIGITS = 34
_BRACKET_SLACK = 1e-9
_SCAN_LIMIT = 100000
# наименьший rtol, который принимает brentq
_BRENT_RTOL = 4 * np.finfo(float).eps


def _sign_change(nu: float, lo: float, hi: float) -> bool:
    return np.sign(jv(nu, lo)) * np.sign(jv(nu, hi)) < 0


def _scan(nu: float, start: float) -> float:
    """Первая смена знака J_ν правее start"""
    step = 0.05 * max(1.0, nu ** (1.0 / 3.0))
    left = start
    for _ in range(_SCAN_LIMIT):
        right = left + step
        if _sign_change(nu, left, right):
            return brentq(lambda x: jv(nu, x), left, right, xtol=1e-15, rtol=_BRENT_RTOL)
        left = right
    raise OracleFailureError(f"no sign change of J_{nu:g} found after x = {start:g}")


def _bracketed(nu: float, lo: float, hi: float, k: int) -> float:
    if not _sign_change(nu, lo, hi):
        raise OracleFailureError(f"root {k} of J_{nu:g} not bracketed by [{lo:.17g}, {hi:.17g}]")
    return brentq(lambda x: jv(nu, x), lo, hi, xtol=1e-15, rtol=_BRENT_RTOL)


@lru_cache(maxsize=16)
def _double_roots(nu: float, count: int) -> tuple:
    roots: List[float] = [_scan(nu, max(nu, 1e-3))]
    if count > 1:
        roots.append(_scan(nu, roots[0] * (1.0 + 1e-12) + 1e-12))
    while len(roots) < count:
        spacing = roots[-1] - roots[-2]
        lo = roots[-1] + min(spacing, math.pi) * (1.0 - _BRACKET_SLACK)
        hi = roots[-1] + max(spacing, math.pi) * (1.0 + _BRACKET_SLACK)
        roots.append(_bracketed(nu, lo, hi, len(roots) + 1))
    return tuple(roots)


def _polish(nu: float, guess: float) -> ExtReal:
    with mpmath.workdps(_MP_DIGITS):
        order = mpmath.mpf(nu)
        root = mpmath.findroot(lambda x: mpmath.besselj(order, x), mpmath.mpf(guess))
        return ExtReal.from_mpf(root)


def bessel_oracle_roots(nu: float, count: int) -> ExtReal:
    """
    Первые count положительных корней J_ν в двойной-двойной точности

    Raises:
        InvalidArgumentError: ν < 0 или count < 1
        OracleFailureError: Корень не попал в скобку
    """
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 0) or count < 1:
        raise InvalidArgumentError(f"Bessel oracle needs nu >= 0 and count >= 1, got nu={nu}, count={count}")
    guesses = _double_roots(nu, int(count))
    polished = [_polish(nu, guess) for guess in guesses]
    return ExtReal([p.hi for p in polished], [p.lo for p in polished])


def bessel_oracle_root(nu: float, k: int) -> ExtReal:
    """
    k-й положительный корень J_ν

    Examples:
        >>> round(float(bessel_oracle_root(1.0, 1).to_float()), 12)
        3.831705970208
    """
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 0) or k < 1:
        raise InvalidArgumentError(f"Bessel oracle needs nu >= 0 and k >= 1, got nu={nu}, k={k}")
    guess = _double_roots(nu, int(k))[-1]
    return _polish(nu, guess)
