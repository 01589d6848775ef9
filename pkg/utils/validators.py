"""
Функции валидации аргументов командной строки
"""
import math
from typing import Optional, Tuple


def validate_order(raw: str, limit: Optional[int] = None) -> Tuple[bool, Optional[int], Optional[str]]:
    """
    Валидация порядка правила / числа корней

    Правила:
    - Целое число ≥ 1
    - Не больше limit, если он задан

    Returns:
        Tuple[bool, Optional[int], Optional[str]]:
            - bool: True если валидация прошла успешно
            - int: Значение
            - str: Сообщение об ошибке

    Examples:
        >>> validate_order("100")
        (True, 100, None)

        >>> validate_order("0")
        (False, None, 'order must be a positive integer, got 0')

        >>> validate_order("abc")
        (False, None, "order must be an integer, got 'abc'")
    """
    raw = str(raw).strip()
    try:
        value = int(raw)
    except ValueError:
        return False, None, f"order must be an integer, got {raw!r}"

    if value < 1:
        return False, None, f"order must be a positive integer, got {value}"

    if limit is not None and value > limit:
        return False, None, f"order must not exceed {limit}, got {value}"

    return True, value, None


def validate_jacobi_parameter(raw: str, name: str = "gamma") -> Tuple[bool, Optional[float], Optional[str]]:
    """
    Валидация параметра веса Якоби/Лагерра: конечное число из (−1, ∞)

    Examples:
        >>> validate_jacobi_parameter("0.25")
        (True, 0.25, None)

        >>> validate_jacobi_parameter("-1")
        (False, None, 'gamma must be greater than -1, got -1.0')
    """
    try:
        value = float(str(raw).strip())
    except ValueError:
        return False, None, f"{name} must be a number, got {raw!r}"

    if not math.isfinite(value):
        return False, None, f"{name} must be finite, got {value}"

    if value <= -1.0:
        return False, None, f"{name} must be greater than -1, got {value}"

    return True, value, None


def validate_bessel_order(raw: str) -> Tuple[bool, Optional[float], Optional[str]]:
    """
    Валидация порядка функции Бесселя: конечное ν ≥ 1

    Examples:
        >>> validate_bessel_order("100")
        (True, 100.0, None)

        >>> validate_bessel_order("0.5")
        (False, None, 'nu must be at least 1, got 0.5')
    """
    try:
        value = float(str(raw).strip())
    except ValueError:
        return False, None, f"nu must be a number, got {raw!r}"

    if not math.isfinite(value):
        return False, None, f"nu must be finite, got {value}"

    if value < 1.0:
        return False, None, f"nu must be at least 1, got {value}"

    return True, value, None


def validate_lambda(raw: str) -> Tuple[bool, Optional[float], Optional[str]]:
    """
    Валидация параметра λ: конечное положительное число

    Examples:
        >>> validate_lambda("1e5")
        (True, 100000.0, None)
    """
    try:
        value = float(str(raw).strip())
    except ValueError:
        return False, None, f"lambda must be a number, got {raw!r}"

    if not (math.isfinite(value) and value > 0):
        return False, None, f"lambda must be positive and finite, got {value}"

    return True, value, None
