"""
Обработчики команд корней: bessel и roots --problem artificial
"""
from argparse import Namespace

import numpy as np

from config import Config
from numerics import BesselJob, OutputSpec, SolverOptions
from services.bessel_service import bessel_service
from services.problem_service import problem_service
from handlers.output import render_columns, render_json


def _options(args: Namespace, default_k: int) -> SolverOptions:
    overrides = {"k": args.order_k or default_k}
    if args.tol is not None:
        overrides["coeff_tol"] = args.tol
    return SolverOptions.from_config(**overrides)


def handle_bessel(args: Namespace, output: OutputSpec) -> str:
    """bessel --nu V --count N: первые N корней J_ν"""
    job = BesselJob(nu=args.nu, count=args.count)
    roots = bessel_service.bessel_roots(job, _options(args, Config.BESSEL_ORDER_K), args.threads)
    if output.format == "json":
        return render_json("bessel", job.count, {"nu": job.nu}, output, roots=roots)
    return render_columns([roots], output)


def handle_roots(args: Namespace, output: OutputSpec) -> str:
    """
    roots --problem artificial --lambda L [--kth K | --count-only]

    Корни считаются и нумеруются на (0, 1]: корень y(0) = 0 задан данными
    Коши и не выводится. Без --kth и --count-only выводятся все корни.
    """
    solution = problem_service.artificial(args.lam, _options(args, Config.DEFAULT_ORDER_K))
    params = {"lambda": args.lam}

    if args.count_only:
        if output.format == "json":
            return render_json(args.problem, solution.open_count, params, output, extra={"count": solution.open_count})
        return f"{solution.open_count}\n"

    if args.kth is not None:
        roots = np.array([solution.kth(args.kth + solution.skipped)])
        extra = {"k": args.kth}
    else:
        roots, _ = solution.open_roots(args.threads)
        extra = None

    if output.format == "json":
        return render_json(args.problem, solution.open_count, params, output, extra=extra, roots=roots)
    return render_columns([roots], output)
