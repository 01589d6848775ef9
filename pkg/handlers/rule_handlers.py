"""
Обработчики команд квадратурных правил: legendre, jacobi, laguerre
"""
from argparse import Namespace

from numerics import Family, OutputSpec, QuadratureRule
from services.gauss_service import family_options, gauss_service
from handlers.output import render_columns, render_json
from utils.logger import solver_logger


def render_rule(rule: QuadratureRule, output: OutputSpec) -> str:
    """Правило в формате output: пары "узел вес" или JSON"""
    if output.format == "json":
        return render_json(
            rule.family.value, rule.n, rule.params, output, nodes=rule.nodes, weights=rule.weights
        )
    return render_columns([rule.nodes, rule.weights], output)


def _build(family: Family, args: Namespace) -> QuadratureRule:
    opts = family_options(family, n=args.n, k=args.order_k, coeff_tol=args.tol)
    solver_logger.debug(f"{family.value} rule n={args.n} with k={opts.k}, tol={opts.coeff_tol:g}")
    return gauss_service.rule(
        family,
        args.n,
        gamma=getattr(args, "gamma", 0.0),
        zeta=getattr(args, "zeta", 0.0),
        opts=opts,
        threads=args.threads,
    )


def handle_legendre(args: Namespace, output: OutputSpec) -> str:
    """legendre <n>"""
    return render_rule(_build(Family.LEGENDRE, args), output)


def handle_jacobi(args: Namespace, output: OutputSpec) -> str:
    """jacobi <n> --gamma G --zeta Z"""
    return render_rule(_build(Family.JACOBI, args), output)


def handle_laguerre(args: Namespace, output: OutputSpec) -> str:
    """laguerre <n> --gamma G"""
    return render_rule(_build(Family.LAGUERRE, args), output)
