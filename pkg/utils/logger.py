"""
Логирование решателя: цветной stderr и, по LOG_FILE, ротируемые файлы
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

import colorlog

from config import Config

_MAX_BYTES = 10 * 1024 * 1024
_BACKUPS = 5

_FILE_FORMAT = '[%(asctime)s] %(levelname)-8s - %(name)s [%(threadName)s] - %(message)s'
_CONSOLE_FORMAT = '%(log_color)s%(asctime)s %(levelname)-8s%(reset)s %(message)s'
_LEVEL_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'red,bg_white',
}


def _console_handler(level: int) -> logging.Handler:
    # stdout занят результатами CLI
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(colorlog.ColoredFormatter(_CONSOLE_FORMAT, datefmt='%H:%M:%S', log_colors=_LEVEL_COLORS))
    return handler


def _rotating_handler(path: Path, level: int) -> logging.Handler:
    handler = RotatingFileHandler(filename=str(path), maxBytes=_MAX_BYTES, backupCount=_BACKUPS, encoding='utf-8')
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(_FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
    return handler


def setup_logger(name: str = __name__) -> logging.Logger:
    """
    Logger с выводом в stderr; при заданном LOG_FILE ещё два файла:
    полный журнал и отдельный журнал ошибок (<stem>_errors<suffix>)

    Повторный вызов с тем же именем возвращает уже настроенный logger.

    Args:
        name: Имя logger

    Returns:
        logging.Logger: Настроенный logger
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    level = getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO)
    logger.setLevel(level)
    logger.addHandler(_console_handler(level))

    if Config.is_file_logging():
        log_file = Path(Config.LOG_FILE)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.addHandler(_rotating_handler(log_file, level))
        logger.addHandler(_rotating_handler(log_file.with_name(f"{log_file.stem}_errors{log_file.suffix}"), logging.ERROR))

    logger.propagate = False
    return logger


# Главный logger пакета
solver_logger = setup_logger("phaseroot")


def log_build(kind: str, pieces: int, seconds: float, alpha_b: Optional[float] = None) -> None:
    """
    Итог построения фазовой функции

    Args:
        kind: Имя задачи
        pieces: Число подотрезков
        seconds: Время построения
        alpha_b: α(b), если известно
    """
    tail = f", alpha(b)={alpha_b:.6g}" if alpha_b is not None else ""
    solver_logger.info(f"✅ Phase {kind}: {pieces} pieces in {seconds:.3f}s{tail}")


def log_rule(family: str, n: int, seconds: float) -> None:
    """Итог построения квадратурного правила"""
    solver_logger.info(f"✅ Gauss-{family} rule n={n} in {seconds:.3f}s")


def log_error(error: Exception, context: str = "") -> None:
    """
    Ошибка с кодом PhaseRootError (или именем класса) и контекстом

    Args:
        error: Исключение
        context: Где произошло
    """
    where = f" ({context})" if context else ""
    code = getattr(error, "code", type(error).__name__)
    solver_logger.error(f"❌ Error{where}: [{code}] {type(error).__name__}: {error}")
