"""
Построение неосциллирующей фазовой функции

Два прохода по уравнению Куммера в β-форме (β = α′):

    β″ = −2β³ + 2Qβ + (3/2)(β′)²/β,   Q = λ²q.

Проход 1: задача Коши слева направо для коэффициента со сглаживающим
окном (на левой четверти он равен 1, поэтому β(a) = λ, β′(a) = 0 известны).
Проход 2: та же задача справа налево для настоящего коэффициента
с данными в точке b из первого прохода. На каждом подотрезке: грубое
начальное приближение неявным методом трапеций, затем итерации
Ньютона–Канторовича со спектральным решателем.
"""
import time
from collections import deque
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.special import erfc

from numerics.chebkit import (
    adaptive_partition,
    cheb_nodes,
    evaluate_on_pieces,
    pw_antiderivative,
    reference_nodes,
    sample,
    spectral_linear_ivp_full,
    spectral_matrices,
    needs_split,
    vals_to_coeffs,
)
from numerics.exceptions import (
    RECOVERABLE_PIECE_ERRORS,
    ConvergenceFailureError,
    DegeneratePhaseError,
    InvalidArgumentError,
    IterateRejectedError,
    NonPositiveCoefficientError,
    OutOfDomainError,
    ResolutionFailureError,
    SeedFailureError,
)
from numerics.models import (
    CoefficientProblem,
    Interval,
    KummerState,
    PhaseFunction,
    PiecewiseCheb,
    SolverOptions,
)
from utils.logger import log_build, solver_logger


class _RefineRequest(Exception):
    """Хвост коэффициентов β велик: подотрезок нужно поделить"""

    code = "refine"


def window_phi(t, iv: Interval):
    """
    Окно φ: ≈1 на левой четверти iv, ≈0 на правой, переход в середине

    φ(t) = ½(erf(c(s + L/2)) − erf(c(s − L/2))), s = t − a, L = b − a, c = 24/L;
    считается через erfc, чтобы оба плато были точными.

    Examples:
        >>> window_phi(0.5, Interval(0.0, 1.0))
        0.5
    """
    points = np.asarray(t, dtype=float)
    length = iv.length
    scale = 24.0 / length
    shifted = points - iv.lo
    phi = 0.5 * (erfc(scale * (shifted - 0.5 * length)) - erfc(scale * (shifted + 0.5 * length)))
    if points.ndim == 0:
        return float(phi)
    return phi


def _checked_coefficient(prob: CoefficientProblem, t: np.ndarray) -> np.ndarray:
    q = sample(prob.q, t)
    if prob.positive:
        interior = (t > prob.iv.lo) & (t < prob.iv.hi)
        bad = ~(q > 0) & interior | ~(q >= 0)
        if np.any(bad):
            where = float(np.atleast_1d(t)[np.argmax(np.atleast_1d(bad))])
            raise NonPositiveCoefficientError(
                f"coefficient of '{prob.name or 'problem'}' is not positive at t = {where!r}"
            )
    return q


def windowed_coefficient(prob: CoefficientProblem, t):
    """
    Коэффициент с окном q̃ = φ + (1 − φ)q

    Raises:
        NonPositiveCoefficientError: q(t) ≤ 0 во внутренней точке
            (только для задач с positive=True)
    """
    points = np.asarray(t, dtype=float)
    flat = np.atleast_1d(points)
    phi = window_phi(flat, prob.iv)
    result = phi + (1.0 - phi) * _checked_coefficient(prob, flat)
    if points.ndim == 0:
        return float(result[0])
    return result.reshape(points.shape)


def kummer_residual(phase: PhaseFunction, t):
    """
    Относительная невязка уравнения Куммера в точке t

    [λ²q − α′² − ½α‴/α′ + ¾(α″/α′)²] / (λ²q); α‴ берётся как спектральная
    производная куска α″, содержащего t.

    Raises:
        DegeneratePhaseError: α′(t) ≤ 0
    """
    points = np.asarray(t, dtype=float)
    flat = np.atleast_1d(points)
    domain = phase.alpha1.domain
    if np.any(~(flat >= domain.lo)) or np.any(~(flat <= domain.hi)):
        raise OutOfDomainError(f"residual point outside [{domain.lo}, {domain.hi}]")

    index = np.clip(np.searchsorted(phase.alpha1.breakpoints, flat, side="left") - 1, 0, phase.alpha1.pieces - 1)
    beta = evaluate_on_pieces(phase.alpha1, index, flat)
    beta1 = evaluate_on_pieces(phase.alpha2, index, flat)
    if np.any(beta <= 0):
        raise DegeneratePhaseError("alpha' is not positive at a residual point")

    _, _, D = spectral_matrices(phase.alpha2.order)
    half = 0.5 * np.diff(phase.alpha2.breakpoints)
    third = PiecewiseCheb(phase.alpha2.breakpoints, (phase.alpha2.values @ D.T) / half[:, None])
    beta2 = evaluate_on_pieces(third, index, flat)

    Q = phase.problem.total(flat)
    residual = (Q - beta ** 2 - 0.5 * beta2 / beta + 0.75 * (beta1 / beta) ** 2) / Q
    if points.ndim == 0:
        return float(residual[0])
    return residual.reshape(points.shape)


def _beta_rhs(Q: float, beta: float, gamma: float) -> Tuple[float, float, float]:
    # Правая часть β″ = F(β, β′) и её частные производные
    value = -2.0 * beta ** 3 + 2.0 * Q * beta + 1.5 * gamma * gamma / beta
    d_beta = -6.0 * beta * beta + 2.0 * Q - 1.5 * (gamma / beta) ** 2
    d_gamma = 3.0 * gamma / beta
    return value, d_beta, d_gamma


def trap_init(
    Q: Callable[[np.ndarray], np.ndarray],
    iv_piece: Interval,
    beta0: float,
    beta0p: float,
    steps: int,
    k: int = 16,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Грубое приближение (β, β′) неявным методом трапеций

    Каждый шаг есть нелинейная система 2×2, решаемая методом Ньютона
    с делением шага пополам при росте невязки. Значения в шагах
    переносятся на сетку Чебышёва кубическим эрмитовым сплайном.

    Args:
        Q: Полный коэффициент λ²q (векторизованный)
        iv_piece: Подотрезок
        beta0, beta0p: β и β′ в левом конце
        steps: Число шагов
        k: Число узлов сетки

    Returns:
        Tuple[np.ndarray, np.ndarray]: (β, β′) в k узлах сетки

    Raises:
        InvalidArgumentError: steps < 1
        SeedFailureError: β стала неположительной или шаги сетки
            вырождаются в арифметике double
    """
    if steps < 1:
        raise InvalidArgumentError(f"trap_init needs at least one step, got {steps}")
    if not beta0 > 0:
        raise SeedFailureError(f"initial beta must be positive, got {beta0}")

    h = iv_piece.length / steps
    times = iv_piece.lo + h * np.arange(steps + 1)
    times[-1] = iv_piece.hi
    if not h > 0 or np.any(np.diff(times) <= 0):
        raise SeedFailureError(
            f"piece [{iv_piece.lo!r}, {iv_piece.hi!r}] is too short for {steps} trapezoid steps"
        )
    q_values = sample(Q, times).tolist()

    beta = [float(beta0)]
    gamma = [float(beta0p)]
    accel = [_beta_rhs(q_values[0], beta0, beta0p)[0]]
    half = 0.5 * h

    for n in range(steps):
        b_prev, g_prev, f_prev = beta[-1], gamma[-1], accel[-1]
        q_next = q_values[n + 1]
        b, g = b_prev, g_prev

        def residual(bb: float, gg: float) -> Tuple[float, float, float]:
            f, _, _ = _beta_rhs(q_next, bb, gg)
            r1 = bb - b_prev - half * (g_prev + gg)
            r2 = gg - g_prev - half * (f_prev + f)
            return r1, r2, (abs(r1) + h * abs(r2)) / b_prev

        r1, r2, norm = residual(b, g)
        for _ in range(30):
            if norm <= 1e-13:
                break
            _, d_beta, d_gamma = _beta_rhs(q_next, b, g)
            a12 = -half
            a21 = -half * d_beta
            a22 = 1.0 - half * d_gamma
            det = a22 - a12 * a21
            if det == 0.0 or not np.isfinite(det):
                raise SeedFailureError(f"singular trapezoid step near t = {times[n + 1]!r}")
            step_b = (a22 * r1 - a12 * r2) / det
            step_g = (-a21 * r1 + r2) / det

            damping = 1.0
            while damping > 1e-4:
                trial_b = b - damping * step_b
                trial_g = g - damping * step_g
                if trial_b > 0:
                    t1, t2, trial_norm = residual(trial_b, trial_g)
                    if trial_norm < norm:
                        b, g, r1, r2, norm = trial_b, trial_g, t1, t2, trial_norm
                        break
                damping *= 0.5
            else:
                break

        if not (b > 0 and np.isfinite(b) and np.isfinite(g)):
            raise SeedFailureError(f"beta left the positive range near t = {times[n + 1]!r}")
        beta.append(b)
        gamma.append(g)
        accel.append(_beta_rhs(q_next, b, g)[0])

    nodes = cheb_nodes(k, iv_piece)
    beta_nodes = CubicHermiteSpline(times, beta, gamma)(nodes)
    beta1_nodes = CubicHermiteSpline(times, gamma, accel)(nodes)
    beta_nodes[-1], beta1_nodes[-1] = beta0, beta0p

    if not np.all(beta_nodes > 0):
        raise SeedFailureError("interpolated trapezoid seed is not positive")
    return beta_nodes, beta1_nodes


def seed_state(beta: np.ndarray, beta1: np.ndarray, iv_piece: Interval) -> KummerState:
    """Начальное состояние итераций: β″ как спектральная производная β′"""
    beta = np.asarray(beta, dtype=float)
    beta1 = np.asarray(beta1, dtype=float)
    _, _, D = spectral_matrices(beta.size)
    beta2 = (D @ beta1) / (0.5 * iv_piece.length)
    zeros = np.zeros_like(beta)
    return KummerState(beta=beta, beta1=beta1, beta2=beta2, residual=zeros, delta=zeros)


def _relative_residual(residual, beta, beta1, beta2, Q) -> float:
    scale = np.maximum.reduce([
        np.abs(beta2),
        2.0 * np.abs(Q * beta),
        2.0 * np.abs(beta) ** 3,
        1.5 * beta1 ** 2 / beta,
    ])
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(np.abs(residual) / scale))


def nk_refine(
    Q: np.ndarray,
    seed: KummerState,
    iv_piece: Interval,
    beta0: float,
    beta0p: float,
    opts: SolverOptions,
) -> KummerState:
    """
    Итерации Ньютона–Канторовича для β-уравнения на подотрезке

    Неизвестная: β″ в узлах; β и β′ получаются интегрированием с точными
    начальными данными β(lo) = beta0, β′(lo) = beta0p. Поправка δ решает

        δ″ − (3β′/β)δ′ + (6β² + (3/2)(β′/β)² − 2Q)δ = r,
        r = −β″ − 2β³ + 2Qβ + (3/2)(β′)²/β,  δ(lo) = δ′(lo) = 0.

    Args:
        Q: Полный коэффициент в k узлах
        seed: Начальное приближение (β″ берётся из seed.beta2)
        iv_piece: Подотрезок
        beta0, beta0p: Начальные данные в iv_piece.lo
        opts: nk_tol, nk_max_iters, nk_residual_tol

    Returns:
        KummerState: Сошедшееся состояние

    Raises:
        InvalidArgumentError: Начальное приближение с β ≤ 0
        IterateRejectedError: Поправка сделала β ≤ 0
        ConvergenceFailureError: Нет сходимости
    """
    if np.any(~(np.asarray(seed.beta) > 0)):
        raise InvalidArgumentError("Newton-Kantorovich seed must be positive at every node")

    Q = np.asarray(Q, dtype=float)
    k = Q.size
    S, S2, _ = spectral_matrices(k)
    h = 0.5 * iv_piece.length
    offset = h * (reference_nodes(k) + 1.0)

    beta2 = np.array(seed.beta2, dtype=float)
    beta = beta0 + beta0p * offset + (h * h) * (S2 @ beta2)
    beta1 = beta0p + h * (S @ beta2)
    beta[-1], beta1[-1] = beta0, beta0p
    delta = np.zeros(k)

    previous = np.inf
    finished = False
    iterations = 0
    for iterations in range(1, opts.nk_max_iters + 1):
        if np.any(~(beta > 0)):
            raise IterateRejectedError(f"beta is not positive on [{iv_piece.lo!r}, {iv_piece.hi!r}]")

        residual = -beta2 - 2.0 * beta ** 3 + 2.0 * Q * beta + 1.5 * beta1 ** 2 / beta
        p = -3.0 * beta1 / beta
        q = 6.0 * beta ** 2 + 1.5 * (beta1 / beta) ** 2 - 2.0 * Q
        step, step1, step2 = spectral_linear_ivp_full(p, q, residual, iv_piece, 0.0, 0.0)

        norm = float(np.max(np.abs(step)) / np.max(np.abs(beta + step)))
        if norm > previous:
            finished = True
            break

        beta, beta1, beta2, delta = beta + step, beta1 + step1, beta2 + step2, step
        previous = norm
        if np.any(~(beta > 0)):
            raise IterateRejectedError(f"correction drove beta below zero on [{iv_piece.lo!r}, {iv_piece.hi!r}]")
        if norm <= opts.nk_tol:
            finished = True
            break

    residual = -beta2 - 2.0 * beta ** 3 + 2.0 * Q * beta + 1.5 * beta1 ** 2 / beta
    relative = _relative_residual(residual, beta, beta1, beta2, Q)
    if not finished or relative > opts.nk_residual_tol:
        raise ConvergenceFailureError(
            f"Newton-Kantorovich stalled on [{iv_piece.lo!r}, {iv_piece.hi!r}] "
            f"after {iterations} iterations (residual {relative:.2e}, update {previous:.2e})"
        )

    return KummerState(
        beta=beta, beta1=beta1, beta2=beta2, residual=residual, delta=delta, iterations=iterations
    )


def _solve_piece(
    Q: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    beta0: float,
    beta0p: float,
    opts: SolverOptions,
    reverse: bool,
) -> Tuple[np.ndarray, np.ndarray]:
    # В обратном проходе решаем задачу Коши по s = lo + hi − t; узлы сетки
    # симметричны, поэтому значения просто разворачиваются
    iv = Interval(lo, hi)
    k = opts.k
    q_nodes = sample(Q, cheb_nodes(k, iv))
    if reverse:
        q_nodes = q_nodes[::-1].copy()
        march_q = lambda s: Q(lo + hi - np.asarray(s, dtype=float))
        start_slope = -beta0p
    else:
        march_q = Q
        start_slope = beta0p

    beta, beta1 = trap_init(march_q, iv, beta0, start_slope, opts.steps, k)
    state = nk_refine(q_nodes, seed_state(beta, beta1, iv), iv, beta0, start_slope, opts)
    if opts.refine and needs_split(vals_to_coeffs(state.beta), opts.coeff_tol):
        raise _RefineRequest()

    if reverse:
        return state.beta[::-1].copy(), -state.beta1[::-1]
    return state.beta, state.beta1


def _march(
    Q: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    beta0: float,
    beta0p: float,
    opts: SolverOptions,
    reverse: bool,
) -> List[Tuple[float, float, np.ndarray, np.ndarray]]:
    bounds = list(zip(breakpoints[:-1], breakpoints[1:]))
    if reverse:
        bounds.reverse()
    queue = deque((lo, hi, 0) for lo, hi in bounds)
    solved = []
    start, slope = beta0, beta0p

    while queue:
        lo, hi, depth = queue.popleft()
        try:
            beta, beta1 = _solve_piece(Q, lo, hi, start, slope, opts, reverse)
        except (_RefineRequest,) + RECOVERABLE_PIECE_ERRORS as exc:
            if depth >= opts.max_depth:
                if isinstance(exc, _RefineRequest):
                    raise ResolutionFailureError(
                        f"phase not resolved on [{lo!r}, {hi!r}] within {opts.max_depth} bisections",
                        interval=(lo, hi),
                    ) from None
                raise
            solver_logger.debug(f"🔄 Bisecting [{lo:.6g}, {hi:.6g}] ({getattr(exc, 'code', 'error')})")
            mid = 0.5 * (lo + hi)
            halves = [(mid, hi), (lo, mid)] if reverse else [(lo, mid), (mid, hi)]
            for half_lo, half_hi in reversed(halves):
                queue.appendleft((half_lo, half_hi, depth + 1))
            continue

        solved.append((lo, hi, beta, beta1))
        if reverse:
            start, slope = float(beta[-1]), float(beta1[-1])
        else:
            start, slope = float(beta[0]), float(beta1[0])

    if reverse:
        solved.reverse()
    return solved


def _partition_surrogate(prob: CoefficientProblem, q: Callable) -> Callable:
    # √q: главный член α′/λ; при точках поворота √q не гладок, берём q
    if prob.positive:
        return lambda t: np.sqrt(np.abs(q(t)))
    return q


def _checked_partition(partition: Sequence[float], iv: Interval) -> List[float]:
    points = [float(x) for x in partition]
    if len(points) < 2 or points[0] != iv.lo or points[-1] != iv.hi:
        raise InvalidArgumentError("partition must start at iv.lo and end at iv.hi")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise InvalidArgumentError("partition must be strictly ascending")
    return points


def build_phase(
    prob: CoefficientProblem,
    opts: Optional[SolverOptions] = None,
    partition: Optional[Sequence[float]] = None,
) -> PhaseFunction:
    """
    Неосциллирующая фазовая функция задачи y″ + λ²q(t)y = 0

    Args:
        prob: Задача
        opts: Параметры решателя (по умолчанию из Config)
        partition: Начальное разбиение второго прохода; по умолчанию
            адаптивное разбиение √q

    Returns:
        PhaseFunction: α, α′, α″ и задача

    Raises:
        NonPositiveCoefficientError: q ≤ 0 во внутренней точке
        ResolutionFailureError, SeedFailureError, ConvergenceFailureError:
            подотрезок не разрешён за max_depth делений
    """
    opts = opts or SolverOptions.from_config()
    iv = prob.iv
    lam2 = prob.lam ** 2
    started = time.perf_counter()

    window_opts = opts.window_options()
    windowed = lambda t: windowed_coefficient(prob, t)
    window_partition = adaptive_partition(_partition_surrogate(prob, windowed), iv, window_opts)
    forward = _march(lambda t: lam2 * windowed(t), window_partition, prob.lam, 0.0, window_opts, reverse=False)
    end_beta, end_slope = float(forward[-1][2][0]), float(forward[-1][3][0])

    true_q = lambda t: _checked_coefficient(prob, np.asarray(t, dtype=float))
    if partition is None:
        partition = adaptive_partition(_partition_surrogate(prob, true_q), iv, opts)
    else:
        partition = _checked_partition(partition, iv)
    backward = _march(lambda t: lam2 * true_q(t), partition, end_beta, end_slope, opts, reverse=True)

    breakpoints = [piece[0] for piece in backward] + [backward[-1][1]]
    alpha1 = PiecewiseCheb(breakpoints, np.vstack([piece[2] for piece in backward]))
    alpha2 = PiecewiseCheb(breakpoints, np.vstack([piece[3] for piece in backward]))
    alpha = pw_antiderivative(alpha1, 0.0)
    phase = PhaseFunction(alpha=alpha, alpha1=alpha1, alpha2=alpha2, problem=prob)

    log_build(prob.name or "phase", alpha1.pieces, time.perf_counter() - started, alpha.right_value)
    return phase
