"""
Вспомогательные функции
"""
import os
from typing import List, Tuple

from config import Config


def format_real(value: float, precision: int = 17) -> str:
    """
    Кратчайшая десятичная запись числа, округлённого до precision значащих цифр

    При precision=17 запись восстанавливает исходный double без потерь.

    Args:
        value: Число
        precision: Число значащих цифр (1..17)

    Returns:
        str: Десятичная строка

    Examples:
        >>> format_real(0.1)
        '0.1'

        >>> format_real(3.141592653589793, 5)
        '3.1416'

        >>> format_real(-1e-20, 3)
        '-1e-20'
    """
    return repr(float(format(float(value), f".{precision}g")))


def resolve_threads(requested: int = 0) -> int:
    """
    Число рабочих потоков: явное значение, иначе PHASEROOT_THREADS, иначе число ядер

    Examples:
        >>> resolve_threads(3)
        3
    """
    if requested and requested > 0:
        return int(requested)
    if Config.THREADS > 0:
        return Config.THREADS
    return max(1, os.cpu_count() or 1)


def chunk_ranges(total: int, parts: int) -> List[Tuple[int, int]]:
    """
    Разбиение диапазона [0, total) на не более parts смежных полуинтервалов

    Examples:
        >>> chunk_ranges(10, 3)
        [(0, 4), (4, 7), (7, 10)]

        >>> chunk_ranges(2, 5)
        [(0, 1), (1, 2)]

        >>> chunk_ranges(0, 4)
        []
    """
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def format_duration(seconds: float) -> str:
    """
    Человекочитаемая длительность для логов

    Examples:
        >>> format_duration(0.0042)
        '4.2ms'

        >>> format_duration(2.5)
        '2.50s'
    """
    if seconds < 1.0:
        return f"{seconds * 1000:.1f}ms"
    return f"{seconds:.2f}s"
