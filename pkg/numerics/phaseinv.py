"""
Обращение фазовой функции

α строго возрастает, поэтому α⁻¹ представляется на образах подотрезков
прямого разбиения теми же k-точечными сетками Чебышёва.
"""
import numpy as np

from numerics.chebkit import cheb_nodes, evaluate_on_pieces, pw_eval
from numerics.exceptions import InversionFailureError
from numerics.models import Interval, InversePhase, PhaseFunction, PiecewiseCheb, SolverOptions
from utils.logger import solver_logger

_MAX_NEWTON_STEPS = 60


def invert_phase(phase: PhaseFunction, opts: SolverOptions = None) -> InversePhase:
    """
    Кусочно-чебышёвское представление α⁻¹ на [α(a), α(b)]

    Для каждого узла x образа решается α(t) = x на соответствующем куске:
    Ньютон от секущей с переходом на бисекцию, если шаг выходит из вилки.

    Raises:
        InversionFailureError: α′ ≤ 0 в узле или вилка не сошлась
    """
    opts = opts or SolverOptions.from_config()
    alpha, alpha1 = phase.alpha, phase.alpha1
    if np.any(~(alpha1.values > 0)):
        raise InversionFailureError("alpha' is not positive at a stored node; the phase is corrupt")

    m, k = alpha.pieces, alpha.order
    t_lo = alpha.breakpoints[:-1]
    t_hi = alpha.breakpoints[1:]
    image = np.concatenate([alpha.values[:, -1], [alpha.values[-1, 0]]])
    if not np.all(np.diff(image) > 0):
        raise InversionFailureError("phase values are not strictly increasing across pieces")

    targets = np.vstack([cheb_nodes(k, Interval(image[i], image[i + 1])) for i in range(m)])
    piece = np.repeat(np.arange(m), k).reshape(m, k)

    # Секущая внутри куска
    share = (targets - image[:-1, None]) / (image[1:] - image[:-1])[:, None]
    t = t_lo[:, None] + share * (t_hi - t_lo)[:, None]
    lower = np.repeat(t_lo[:, None], k, axis=1)
    upper = np.repeat(t_hi[:, None], k, axis=1)

    flat_t, flat_x, flat_piece = t.ravel(), targets.ravel(), piece.ravel()
    flat_lo, flat_hi = lower.ravel().copy(), upper.ravel().copy()
    tol = opts.newton_inv_tol * np.maximum(1.0, np.abs(flat_x))
    active = np.ones(flat_t.size, dtype=bool)

    for _ in range(_MAX_NEWTON_STEPS):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        tt = flat_t[idx]
        value = evaluate_on_pieces(alpha, flat_piece[idx], tt) - flat_x[idx]
        slope = evaluate_on_pieces(alpha1, flat_piece[idx], tt)

        above = value > 0
        flat_hi[idx] = np.where(above, tt, flat_hi[idx])
        flat_lo[idx] = np.where(above, flat_lo[idx], tt)

        step = np.where(slope > 0, value / np.where(slope > 0, slope, 1.0), np.inf)
        candidate = tt - step
        outside = ~((candidate > flat_lo[idx]) & (candidate < flat_hi[idx]))
        candidate = np.where(outside, 0.5 * (flat_lo[idx] + flat_hi[idx]), candidate)

        resolution = 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(tt))
        width = flat_hi[idx] - flat_lo[idx]
        settled = (np.abs(value) <= tol[idx]) | (np.abs(candidate - tt) <= resolution) | (width <= resolution)
        flat_t[idx] = np.where(settled, tt, candidate)
        active[idx[settled]] = False

    if np.any(active):
        raise InversionFailureError(f"{int(active.sum())} inverse nodes did not converge")

    values = flat_t.reshape(m, k)
    values[:, 0] = t_hi
    values[:, -1] = t_lo
    solver_logger.debug(f"inverse phase on [{image[0]:g}, {image[-1]:g}]: {m} pieces")
    return InversePhase(table=PiecewiseCheb(image, values))


def inv_eval(inv: InversePhase, x):
    """
    α⁻¹(x)

    Raises:
        OutOfDomainError: x вне [α(a), α(b)]
    """
    return pw_eval(inv.table, x)
