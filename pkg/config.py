"""
Конфигурация решателя и загрузка переменных окружения
"""
import logging
import os
from dotenv import load_dotenv

# Загрузка переменных окружения из .env файла
load_dotenv()

config_logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        config_logger.warning(f"⚠️ {name}={raw!r} is not an integer, using {default}")
        return default


def _float_env(name: str, default: float) -> float:
    raw = os.getenv(name, "")
    try:
        return float(raw) if raw.strip() else default
    except ValueError:
        config_logger.warning(f"⚠️ {name}={raw!r} is not a number, using {default}")
        return default


class Config:
    """Класс конфигурации решателя"""

    # ========================================
    # LOGGING SETTINGS
    # ========================================
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    # Пустая строка: без записи в файл
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # ========================================
    # PARALLELISM
    # ========================================
    # 0: число ядер
    THREADS: int = _int_env("PHASEROOT_THREADS", 0)

    # ========================================
    # PHASE CONSTRUCTION
    # ========================================
    DEFAULT_ORDER_K: int = _int_env("PHASEROOT_ORDER_K", 16)
    COEFF_TOL: float = _float_env("PHASEROOT_COEFF_TOL", 1e-13)
    NK_TOL: float = _float_env("PHASEROOT_NK_TOL", 1e-14)
    NK_MAX_ITERS: int = _int_env("PHASEROOT_NK_MAX_ITERS", 12)
    MAX_DEPTH: int = _int_env("PHASEROOT_MAX_DEPTH", 50)

    # ========================================
    # QUADRATURE FAMILIES
    # ========================================
    LEGENDRE_ORDER_K: int = _int_env("LEGENDRE_ORDER_K", 5)
    JACOBI_ORDER_K: int = _int_env("JACOBI_ORDER_K", 30)
    LAGUERRE_ORDER_K: int = _int_env("LAGUERRE_ORDER_K", 30)
    BESSEL_ORDER_K: int = _int_env("BESSEL_ORDER_K", 30)

    # Графлёная сетка Лежандра: (π/2)·ratio^(−count+i)
    LEGENDRE_MESH_RATIO: float = _float_env("LEGENDRE_MESH_RATIO", 1.01)
    LEGENDRE_MESH_POINTS: int = _int_env("LEGENDRE_MESH_POINTS", 3474)
    # Левый конец θ_min = scale/ν
    # Графлёная сетка включается с этого порядка; ниже строится адаптивное разбиение
    LEGENDRE_GRADED_MIN_N: int = _int_env("LEGENDRE_GRADED_MIN_N", 10000)
    LEGENDRE_ANCHOR_SCALE: float = _float_env("LEGENDRE_ANCHOR_SCALE", 1e-3)
    JACOBI_ANCHOR_SCALE: float = _float_env("JACOBI_ANCHOR_SCALE", 1e-3)

    # Нижняя граница левого конца фаз Лагерра в переменной u = log t
    LAGUERRE_LEFT_END: float = _float_env("LAGUERRE_LEFT_END", -30.0)

    @classmethod
    def validate(cls) -> None:
        """Валидация настроек"""
        errors = []

        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"LOG_LEVEL must be a logging level name, got {cls.LOG_LEVEL!r}")

        if cls.THREADS < 0:
            errors.append("PHASEROOT_THREADS must be >= 0")

        for name in ("DEFAULT_ORDER_K", "LEGENDRE_ORDER_K", "JACOBI_ORDER_K", "LAGUERRE_ORDER_K", "BESSEL_ORDER_K"):
            value = getattr(cls, name)
            if not 4 <= value <= 64:
                errors.append(f"{name} must lie in [4, 64], got {value}")

        for name in ("COEFF_TOL", "NK_TOL"):
            value = getattr(cls, name)
            if not 0 < value < 1:
                errors.append(f"{name} must lie in (0, 1), got {value}")

        if cls.NK_MAX_ITERS < 1:
            errors.append("PHASEROOT_NK_MAX_ITERS must be >= 1")

        if cls.MAX_DEPTH < 1:
            errors.append("PHASEROOT_MAX_DEPTH must be >= 1")

        if not cls.LEGENDRE_MESH_RATIO > 1:
            errors.append("LEGENDRE_MESH_RATIO must be > 1")

        if cls.LEGENDRE_MESH_POINTS < 10:
            errors.append("LEGENDRE_MESH_POINTS must be >= 10")

        if cls.LEGENDRE_GRADED_MIN_N < 1:
            errors.append("LEGENDRE_GRADED_MIN_N must be >= 1")

        if not cls.LAGUERRE_LEFT_END < -1:
            errors.append("LAGUERRE_LEFT_END must be < -1")

        if errors:
            raise ValueError(
                "Configuration errors:\n" + "\n".join(f"  - {e}" for e in errors)
            )

    @classmethod
    def is_file_logging(cls) -> bool:
        """Включена ли запись логов в файл"""
        return bool(cls.LOG_FILE.strip())


# Валидация конфигурации при импорте
Config.validate()
