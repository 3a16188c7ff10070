import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv
from pythonjsonlogger.json import JsonFormatter

from partdim.errors import InvalidParams

logger = logging.getLogger(__name__)

load_dotenv()

DEFAULT_METRIC_MAX_N = 16
DEFAULT_PARTITION_MAX_N = 11
DEFAULT_SWEEP_PD_MAX_N = 9


@dataclass(frozen=True)
class Settings:
    """Runtime limits and locations, read from the environment"""

    metric_max_n: int = DEFAULT_METRIC_MAX_N
    partition_max_n: int = DEFAULT_PARTITION_MAX_N
    jobs: int = 1
    dump_dir: str = "dumps"
    log_level: str = "WARNING"
    sweep_pd_max_n: int = DEFAULT_SWEEP_PD_MAX_N


def _positive_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParams(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise InvalidParams(f"{name} must be positive, got {value}")
    return value


def get_settings() -> Settings:
    """Build settings from the current environment.

    PARTDIM_MAX_N overrides both brute-force limits.
    """
    metric_max_n = _positive_int("PARTDIM_METRIC_MAX_N", DEFAULT_METRIC_MAX_N)
    partition_max_n = _positive_int("PARTDIM_PARTITION_MAX_N", DEFAULT_PARTITION_MAX_N)
    override = _positive_int("PARTDIM_MAX_N", 0)
    if override:
        logger.debug(f"PARTDIM_MAX_N={override} overrides brute-force limits")
        metric_max_n = partition_max_n = override
    return Settings(
        metric_max_n=metric_max_n,
        partition_max_n=partition_max_n,
        jobs=_positive_int("PARTDIM_JOBS", 1),
        dump_dir=os.environ.get("PARTDIM_DUMP_DIR") or "dumps",
        log_level=(os.environ.get("PARTDIM_LOG_LEVEL") or "WARNING").upper(),
        sweep_pd_max_n=_positive_int("PARTDIM_SWEEP_PD_MAX_N", DEFAULT_SWEEP_PD_MAX_N),
    )


def configure_logging(level: str = None, json_format: bool = False) -> None:
    """Set up the root logger on stderr; JSON records with ``json_format``"""
    level = level or get_settings().log_level
    handler = logging.StreamHandler()
    if json_format:
        handler.setFormatter(JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    logging.basicConfig(level=level, handlers=[handler], force=True)
