"""
Корни решения по фазовой функции

Решение y = d₁ sin(α + d₂)/√α′ обращается в ноль ровно в точках
t_k = α⁻¹(kπ − d₂), а y′(t_k) = (−1)^k d₁ √α′(t_k); тригонометрия
от больших аргументов не вычисляется.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

import numpy as np

from numerics.chebkit import pw_eval
from numerics.exceptions import DegeneratePhaseError, DegenerateSolutionError, RootIndexError
from numerics.models import Amplitude, InversePhase, PhaseFunction, RootResult
from numerics.phaseinv import inv_eval
from utils.helpers import chunk_ranges, resolve_threads


def _local_constants(y0: float, yp0: float, slope: float, curvature: float) -> Tuple[float, float]:
    if y0 == 0.0 and yp0 == 0.0:
        raise DegenerateSolutionError("initial data (0, 0) define the zero solution")
    if not slope > 0:
        raise DegeneratePhaseError(f"alpha' must be positive at the anchor, got {slope}")
    root = math.sqrt(slope)
    c1 = y0 * root
    c2 = y0 * curvature / (2.0 * slope * root) + yp0 / root
    return c1, c2


def fit_amplitude(y_a: float, yp_a: float, phase: PhaseFunction) -> Tuple[float, float]:
    """
    Константы (c₁, c₂) по данным Коши в левом конце

    c₁ = y(a)√α′(a),  c₂ = y(a)α″(a)/(2α′(a)^{3/2}) + y′(a)/√α′(a)

    Raises:
        DegenerateSolutionError: y(a) = y′(a) = 0
    """
    return _local_constants(float(y_a), float(yp_a), phase.alpha1.left_value, phase.alpha2.left_value)


def to_polar(c1: float, c2: float) -> Tuple[float, float]:
    """
    (d₁, d₂) с c₁ = d₁ sin d₂, c₂ = d₁ cos d₂ и 0 < d₂ ≤ π

    Examples:
        >>> to_polar(1.0, 0.0)
        (1.0, 1.5707963267948966)
    """
    c1, c2 = float(c1), float(c2)
    if c1 == 0.0 and c2 == 0.0:
        raise DegenerateSolutionError("amplitude constants are both zero")
    if c1 > 0:
        return math.hypot(c1, c2), math.atan2(c1, c2)
    if c1 < 0:
        return -math.hypot(c1, c2), math.atan2(c1, c2) + math.pi
    return -c2, math.pi


def make_amplitude(c1: float, c2: float) -> Amplitude:
    d1, d2 = to_polar(c1, c2)
    return Amplitude(c1=float(c1), c2=float(c2), d1=d1, d2=d2)


def fit_amplitude_at(t0: float, y0: float, yp0: float, phase: PhaseFunction) -> Amplitude:
    """
    Амплитуда по данным Коши во внутренней точке t₀

    Локально y = d̃₁ sin(α − α(t₀) + d̃₂)/√α′; глобальный сдвиг
    d₂ = d̃₂ − α(t₀) приводится к (0, π] сдвигом на mπ со сменой знака d₁.
    """
    t0 = float(t0)
    slope = pw_eval(phase.alpha1, t0)
    curvature = pw_eval(phase.alpha2, t0)
    local1, local2 = _local_constants(float(y0), float(yp0), slope, curvature)
    d1, d2 = to_polar(local1, local2)

    shifted = d2 - pw_eval(phase.alpha, t0)
    turns = math.floor((math.pi - shifted) / math.pi)
    shifted += turns * math.pi
    if shifted <= 0.0:
        # округление у границы (0, π]
        shifted += math.pi
        turns += 1
    if turns % 2:
        d1 = -d1
    return Amplitude(c1=d1 * math.sin(shifted), c2=d1 * math.cos(shifted), d1=d1, d2=shifted)


def count_roots(phase: PhaseFunction, amp: Amplitude) -> int:
    """Число k ≥ 1 с kπ − d₂ ∈ [0, α(b)], включая корни в концах отрезка"""
    count = math.floor((phase.alpha_b + amp.d2) / math.pi)
    while count > 0 and count * math.pi - amp.d2 > phase.alpha_b:
        count -= 1
    return max(count, 0)


def count_open_roots(phase: PhaseFunction, amp: Amplitude) -> int:
    """
    Число корней на (a, b]: корень в самой точке a (d₂ = π) не считается

    Нумерация count_roots при этом не меняется, корни на (a, b] имеют
    номера count_roots − count_open_roots + 1 .. count_roots.
    """
    count = count_roots(phase, amp)
    if count and amp.d2 == math.pi:
        return count - 1
    return count


def _roots_block(phase: PhaseFunction, inv: InversePhase, amp: Amplitude, ks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    targets = np.clip(ks * math.pi - amp.d2, 0.0, phase.alpha_b)
    t = inv_eval(inv, targets)
    # Один шаг Ньютона по самой α
    value = pw_eval(phase.alpha, t)
    slope = pw_eval(phase.alpha1, t)
    if np.any(~(slope > 0)):
        raise DegeneratePhaseError("alpha' is not positive at a root")
    t = np.clip(t - (value - targets) / slope, phase.a, phase.b)
    slope = pw_eval(phase.alpha1, t)
    if np.any(~(slope > 0)):
        raise DegeneratePhaseError("alpha' is not positive at a root")
    signs = np.where(ks % 2 == 0, 1.0, -1.0)
    return t, signs * amp.d1 * np.sqrt(slope)


def _checked_indices(phase: PhaseFunction, amp: Amplitude, ks) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.int64)
    count = count_roots(phase, amp)
    if ks.size and (ks.min() < 1 or ks.max() > count):
        raise RootIndexError(f"root index outside [1, {count}]")
    return ks


def kth_root(phase: PhaseFunction, inv: InversePhase, amp: Amplitude, k: int) -> float:
    """
    k-й корень: α⁻¹(kπ − d₂) с одним шагом Ньютона по α

    Raises:
        RootIndexError: k вне [1, count_roots]
    """
    ks = _checked_indices(phase, amp, [int(k)])
    t, _ = _roots_block(phase, inv, amp, ks)
    return float(t[0])


def derivative_at_root(phase: PhaseFunction, amp: Amplitude, k: int, t_k: float) -> float:
    """
    y′(t_k) = (−1)^k d₁ √α′(t_k)

    Raises:
        DegeneratePhaseError: α′(t_k) ≤ 0
    """
    slope = pw_eval(phase.alpha1, float(t_k))
    if not slope > 0:
        raise DegeneratePhaseError(f"alpha'({t_k}) = {slope} is not positive")
    sign = 1.0 if int(k) % 2 == 0 else -1.0
    return sign * amp.d1 * math.sqrt(slope)


def extract_roots(
    phase: PhaseFunction,
    inv: InversePhase,
    amp: Amplitude,
    ks=None,
    threads: int = 0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Корни и производные для массива номеров (по умолчанию все 1..count)

    Номера делятся на смежные блоки по потокам; каждая точка считается
    независимо, поэтому результат не зависит от числа потоков.

    Returns:
        Tuple[np.ndarray, np.ndarray]: (t_k, y′(t_k))
    """
    if ks is None:
        ks = np.arange(1, count_roots(phase, amp) + 1, dtype=np.int64)
    ks = _checked_indices(phase, amp, ks)

    roots = np.empty(ks.size)
    derivatives = np.empty(ks.size)
    blocks = chunk_ranges(ks.size, resolve_threads(threads))

    def work(block: Tuple[int, int]) -> None:
        start, stop = block
        roots[start:stop], derivatives[start:stop] = _roots_block(phase, inv, amp, ks[start:stop])

    if len(blocks) <= 1:
        for block in blocks:
            work(block)
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            list(pool.map(work, blocks))
    return roots, derivatives


def root_results(
    phase: PhaseFunction,
    inv: InversePhase,
    amp: Amplitude,
    ks=None,
    threads: int = 0,
) -> List[RootResult]:
    """Корни в виде записей RootResult с отметкой корней в концах отрезка"""
    if ks is None:
        ks = np.arange(1, count_roots(phase, amp) + 1, dtype=np.int64)
    ks = np.asarray(ks, dtype=np.int64)
    roots, derivatives = extract_roots(phase, inv, amp, ks, threads)
    return [
        RootResult(k=int(k), t=float(t), yprime=float(yp), on_boundary=bool(t == phase.a or t == phase.b))
        for k, t, yp in zip(ks, roots, derivatives)
    ]


def reconstruct(phase: PhaseFunction, amp: Amplitude, t):
    """Значение решения y(t) = d₁ sin(α(t) + d₂)/√α′(t)"""
    alpha = pw_eval(phase.alpha, t)
    slope = pw_eval(phase.alpha1, t)
    return amp.d1 * np.sin(alpha + amp.d2) / np.sqrt(slope)
