"""
Таблица для тестовой задачи: число корней, число кусков фазы и время по λ.
Запуск: python _table_artificial.py [max_exponent]
λ = 10^3 .. 10^max_exponent (по умолчанию до 10^7).
"""
import sys
import time

import numpy as np

from numerics import SolverOptions, pw_eval
from services.problem_service import problem_service
from utils.helpers import format_duration

max_exponent = int(sys.argv[1]) if len(sys.argv) > 1 else 7
opts = SolverOptions.from_config()

print(f"{'lambda':>8} {'roots':>9} {'pieces':>7} {'build':>9} {'invert':>9} {'roots':>9} {'max err':>10}")
for exponent in range(3, max_exponent + 1):
    lam = 10.0 ** exponent
    solution = problem_service.artificial(lam, opts)

    started = time.perf_counter()
    roots, _ = solution.open_roots()
    elapsed = time.perf_counter() - started

    # сдвиг фазы в корнях относительно kπ − d₂
    ks = np.arange(solution.skipped + 1, solution.count + 1)
    error = np.max(np.abs(pw_eval(solution.phase.alpha, roots) - (ks * np.pi - solution.amplitude.d2)) / (ks * np.pi))

    print(
        f"{f'1e{exponent}':>8} {solution.open_count:>9} {solution.phase.alpha1.pieces:>7} "
        f"{format_duration(solution.build_seconds):>9} {format_duration(solution.invert_seconds):>9} "
        f"{format_duration(elapsed):>9} {error:>10.2e}"
    )
