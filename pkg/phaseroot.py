"""
Командная строка phaseroot: квадратуры Гаусса, корни Бесселя и тестовой задачи

Примеры:
    python phaseroot.py legendre 10000 --threads 4
    python phaseroot.py jacobi 200 --gamma 0.25 --zeta -0.4 --format json
    python phaseroot.py bessel --nu 100 --count 1000 --out roots.txt
    python phaseroot.py roots --problem artificial --lambda 1e3 --count-only
"""
import argparse
import sys
from typing import Callable, Optional, Sequence, Tuple

from pydantic import ValidationError

from handlers import handle_bessel, handle_jacobi, handle_laguerre, handle_legendre, handle_roots
from middlewares import EXIT_USAGE, CommandMiddleware
from numerics import OutputSpec
from utils.logger import solver_logger
from utils.validators import validate_bessel_order, validate_jacobi_parameter, validate_lambda, validate_order

Validator = Callable[[str], Tuple[bool, object, Optional[str]]]


def _checked(validator: Validator) -> Callable[[str], object]:
    """Тип аргумента argparse из функции валидации"""

    def convert(raw: str):
        ok, value, error = validator(raw)
        if not ok:
            raise argparse.ArgumentTypeError(error)
        return value

    convert.__name__ = validator.__name__.replace("validate_", "")
    return convert


def _precision(raw: str) -> int:
    ok, value, error = validate_order(raw, limit=17)
    if not ok:
        raise argparse.ArgumentTypeError(error.replace("order", "precision"))
    return value


def _threads(raw: str) -> int:
    if str(raw).strip() == "0":
        return 0
    ok, value, error = validate_order(raw)
    if not ok:
        raise argparse.ArgumentTypeError(error.replace("order", "threads"))
    return value


def _tolerance(raw: str) -> float:
    ok, value, error = validate_lambda(raw)
    if not ok:
        raise argparse.ArgumentTypeError(error.replace("lambda", "tol"))
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("output and solver")
    group.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    group.add_argument("--precision", type=_precision, default=17, help="significant digits, 1..17")
    group.add_argument("--order-k", dest="order_k", type=_checked(validate_order), default=None,
                       help="Chebyshev nodes per piece (family default if omitted)")
    group.add_argument("--tol", type=_tolerance, default=None, help="coefficient tail tolerance")
    group.add_argument("--out", default=None, help="write to this file instead of stdout")
    group.add_argument("--threads", type=_threads, default=0,
                       help="root extraction workers (0 = PHASEROOT_THREADS or all cores)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Парсер со всеми подкомандами"""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="phaseroot",
        description="Roots of oscillatory second order ODEs via nonoscillatory phase functions",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    legendre = commands.add_parser("legendre", parents=[common], help="Gauss-Legendre rule")
    legendre.add_argument("n", type=_checked(validate_order))
    legendre.set_defaults(handler=handle_legendre)

    jacobi = commands.add_parser("jacobi", parents=[common], help="Gauss-Jacobi rule")
    jacobi.add_argument("n", type=_checked(validate_order))
    jacobi.add_argument("--gamma", type=_checked(validate_jacobi_parameter), required=True)
    jacobi.add_argument("--zeta", type=_checked(lambda raw: validate_jacobi_parameter(raw, "zeta")),
                        required=True)
    jacobi.set_defaults(handler=handle_jacobi)

    laguerre = commands.add_parser("laguerre", parents=[common], help="generalized Gauss-Laguerre rule")
    laguerre.add_argument("n", type=_checked(validate_order))
    laguerre.add_argument("--gamma", type=_checked(validate_jacobi_parameter), default=0.0)
    laguerre.set_defaults(handler=handle_laguerre)

    bessel = commands.add_parser("bessel", parents=[common], help="first roots of J_nu")
    bessel.add_argument("--nu", type=_checked(validate_bessel_order), required=True)
    bessel.add_argument("--count", type=_checked(validate_order), required=True)
    bessel.set_defaults(handler=handle_bessel)

    roots = commands.add_parser("roots", parents=[common], help="roots of a built-in problem")
    roots.add_argument("--problem", choices=("artificial",), required=True)
    roots.add_argument("--lambda", dest="lam", type=_checked(validate_lambda), required=True)
    which = roots.add_mutually_exclusive_group()
    which.add_argument("--kth", type=_checked(validate_order), default=None, help="only the k-th root")
    which.add_argument("--count-only", dest="count_only", action="store_true", help="only the root count")
    roots.set_defaults(handler=handle_roots)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Разбор аргументов и выполнение подкоманды

    Returns:
        int: 0 успех, 2 ошибка использования, 3 числовая ошибка
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        output = OutputSpec(format=args.format, precision=args.precision, destination=args.out)
    except ValidationError as e:
        solver_logger.error(f"❌ Invalid output settings: {e}")
        return EXIT_USAGE

    return CommandMiddleware()(args.handler, args, output)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
