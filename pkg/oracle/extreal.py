"""
Двойная-двойная арифметика (≈31 значащая цифра) над массивами numpy

Значение хранится как невычисленная сумма hi + lo с |lo| ≤ ulp(hi)/2.
Все операции поэлементные и построены на безошибочных преобразованиях
two_sum / two_prod (расщепление Веклампа–Деккера).
"""
from typing import Iterable, Union

import mpmath
import numpy as np

_SPLITTER = 134217729.0  # 2^27 + 1

Number = Union[float, int, np.ndarray, "ExtReal"]


def two_sum(a, b):
    """s + err == a + b точно"""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    """Как two_sum, но требует |a| ≥ |b|"""
    s = a + b
    err = b - (s - a)
    return s, err


def split(a):
    """a = hi + lo, у каждой части не больше 26 значащих бит"""
    c = _SPLITTER * a
    big = c - a
    hi = c - big
    lo = a - hi
    return hi, lo


def two_prod(a, b):
    """p + err == a·b точно"""
    p = a * b
    a_hi, a_lo = split(a)
    b_hi, b_lo = split(b)
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


class ExtReal:
    """
    Число (или массив чисел) двойной-двойной точности

    Examples:
        >>> x = ExtReal.from_float(1.0) / 3.0
        >>> abs(float((x * 3.0 - 1.0).hi)) < 1e-31
        True
    """

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=0.0):
        self.hi = np.asarray(hi, dtype=float)
        self.lo = np.broadcast_to(np.asarray(lo, dtype=float), self.hi.shape).copy()

    # ---- construction
    @classmethod
    def from_float(cls, value) -> "ExtReal":
        return cls(value, 0.0)

    @classmethod
    def from_mpf(cls, value) -> "ExtReal":
        """Округление mpf (или последовательности mpf) до hi + lo"""
        if isinstance(value, (list, tuple)):
            hi = [float(v) for v in value]
            lo = [float(v - mpmath.mpf(h)) for v, h in zip(value, hi)]
            return cls(hi, lo)
        hi = float(value)
        return cls(hi, float(value - mpmath.mpf(hi)))

    @staticmethod
    def _coerce(value: Number) -> "ExtReal":
        return value if isinstance(value, ExtReal) else ExtReal(value, 0.0)

    # ---- conversion
    def to_float(self) -> np.ndarray:
        return self.hi + self.lo

    def to_mpf(self):
        if self.hi.ndim == 0:
            return mpmath.mpf(float(self.hi)) + mpmath.mpf(float(self.lo))
        return [mpmath.mpf(float(h)) + mpmath.mpf(float(l)) for h, l in zip(self.hi.ravel(), self.lo.ravel())]

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.hi)) and np.all(np.isfinite(self.lo)))

    @property
    def shape(self):
        return self.hi.shape

    def __len__(self) -> int:
        return len(self.hi)

    def __getitem__(self, index) -> "ExtReal":
        return ExtReal(self.hi[index], self.lo[index])

    def __repr__(self) -> str:
        return f"ExtReal(hi={self.hi!r}, lo={self.lo!r})"

    # ---- arithmetic
    def __neg__(self) -> "ExtReal":
        return ExtReal(-self.hi, -self.lo)

    def __abs__(self) -> "ExtReal":
        sign = np.where(self.hi < 0, -1.0, 1.0)
        return ExtReal(sign * self.hi, sign * self.lo)

    def __add__(self, other: Number) -> "ExtReal":
        other = self._coerce(other)
        s, e = two_sum(self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e = e + t
        s, e = quick_two_sum(s, e)
        e = e + f
        hi, lo = quick_two_sum(s, e)
        return ExtReal(hi, lo)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "ExtReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "ExtReal":
        return self._coerce(other) - self

    def __mul__(self, other: Number) -> "ExtReal":
        other = self._coerce(other)
        p, e = two_prod(self.hi, other.hi)
        e = e + (self.hi * other.lo + self.lo * other.hi)
        hi, lo = quick_two_sum(p, e)
        return ExtReal(hi, lo)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "ExtReal":
        other = self._coerce(other)
        q1 = self.hi / other.hi
        remainder = self - other * q1
        q2 = remainder.hi / other.hi
        remainder = remainder - other * q2
        q3 = remainder.hi / other.hi
        q1, q2 = quick_two_sum(q1, q2)
        return ExtReal(q1, q2) + q3

    def __rtruediv__(self, other: Number) -> "ExtReal":
        return self._coerce(other) / self

    def sqrt(self) -> "ExtReal":
        """Корень одним шагом Ньютона от корня hi; для отрицательных NaN"""
        root = np.sqrt(np.where(self.hi > 0, self.hi, 1.0))
        square = ExtReal(*two_prod(root, root))
        correction = (self - square).hi / (2.0 * root)
        hi, lo = two_sum(root, correction)
        hi = np.where(self.hi > 0, hi, np.where(self.hi == 0, 0.0, np.nan))
        lo = np.where(self.hi > 0, lo, 0.0)
        return ExtReal(hi, lo)

    # ---- comparisons (поэлементно)
    def _compare(self, other: Number):
        diff = self - self._coerce(other)
        return diff.hi + diff.lo

    def __lt__(self, other: Number):
        return self._compare(other) < 0

    def __le__(self, other: Number):
        return self._compare(other) <= 0

    def __gt__(self, other: Number):
        return self._compare(other) > 0

    def __ge__(self, other: Number):
        return self._compare(other) >= 0


def ext_sum(values: Iterable[ExtReal]) -> ExtReal:
    """Сумма последовательности в двойной-двойной точности"""
    total = ExtReal(0.0)
    for value in values:
        total = total + value
    return total
