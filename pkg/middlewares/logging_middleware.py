"""
Middleware для логирования и кодов выхода команд
"""
import sys
import time
from argparse import Namespace
from typing import Callable

from numerics import OutputSpec, PhaseRootError
from handlers.output import write_output
from utils.helpers import format_duration
from utils.logger import log_error, solver_logger

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

Handler = Callable[[Namespace, OutputSpec], str]


class CommandMiddleware:
    """
    Обёртка подкоманды: время выполнения, запись результата, коды выхода

    Числовые ошибки (PhaseRootError) дают код 3 и сообщение с кодом ошибки,
    ошибки записи результата дают код 2.
    """

    def __init__(self, slow_threshold: float = 60.0):
        """
        Args:
            slow_threshold: Порог медленной команды (секунды)
        """
        self.slow_threshold = slow_threshold

    def __call__(self, handler: Handler, args: Namespace, output: OutputSpec) -> int:
        command = getattr(args, "command", handler.__name__)
        started = time.perf_counter()
        solver_logger.debug(f"Command {command}: {vars(args)}")

        try:
            text = handler(args, output)
        except PhaseRootError as e:
            log_error(e, f"command {command}")
            sys.stderr.write(f"phaseroot: {command} failed: [{e.code}] {e}\n")
            return EXIT_NUMERICAL

        try:
            write_output(text, output)
        except OSError as e:
            log_error(e, f"writing {output.destination}")
            sys.stderr.write(f"phaseroot: cannot write {output.destination}: {e}\n")
            return EXIT_USAGE

        duration = time.perf_counter() - started
        if duration > self.slow_threshold:
            solver_logger.warning(f"⚠️ Slow command detected: {command} took {format_duration(duration)}")
        else:
            solver_logger.info(f"✅ Command {command} finished in {format_duration(duration)}")
        return EXIT_OK
