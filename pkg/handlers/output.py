"""
Форматирование и запись результатов команд
"""
import json
import sys
from typing import Dict, Iterable, Optional, Sequence

from numerics import OutputSpec
from utils.helpers import format_real


def _rounded(values: Iterable[float], precision: int) -> list:
    return [float(format_real(v, precision)) for v in values]


def render_columns(columns: Sequence[Sequence[float]], output: OutputSpec) -> str:
    """
    Текст: одна запись на строку, поля через один пробел

    Examples:
        >>> render_columns([[0.5, 1.0], [2.0, 3.0]], OutputSpec())
        '0.5 2.0\\n1.0 3.0\\n'
    """
    lines = [
        " ".join(format_real(value, output.precision) for value in record)
        for record in zip(*columns)
    ]
    return "".join(line + "\n" for line in lines)


def render_json(
    family: str,
    n: int,
    params: Dict[str, float],
    output: OutputSpec,
    extra: Optional[Dict[str, object]] = None,
    **arrays: Sequence[float],
) -> str:
    """
    Строгий JSON: {"family", "n", "params", <массивы>...}

    Examples:
        >>> render_json("legendre", 1, {}, OutputSpec(), nodes=[0.0], weights=[2.0])
        '{"family": "legendre", "n": 1, "params": {}, "nodes": [0.0], "weights": [2.0]}\\n'
    """
    document: Dict[str, object] = {"family": family, "n": int(n), "params": dict(params)}
    if extra:
        document.update(extra)
    for name, values in arrays.items():
        document[name] = _rounded(values, output.precision)
    return json.dumps(document, allow_nan=False) + "\n"


def write_output(text: str, output: OutputSpec) -> None:
    """Запись в файл destination или в stdout"""
    if output.destination is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    output.destination.parent.mkdir(parents=True, exist_ok=True)
    output.destination.write_text(text, encoding="utf-8")
