import logging
import os
from dataclasses import dataclass
from typing import Optional

from qmut.errors import QuiverArgumentError

# Limits and tolerances - update these values as needed
MAX_TARGET = 1e12
OVERFLOW_LIMIT = 1e300
MAX_ORBIT_LENGTH = 10**6
NEAR_BOUNDARY = 1e-6
DRIFT_TOLERANCE = 1e-6
PROBE_STEP_CAP = 10**4
UNIT_TOLERANCE = 1e-9
CLAMP_TOLERANCE = 1e-12

DEFAULT_SEED = 0
DEFAULT_MAX_STEPS = 10_000
DEFAULT_TARGET = 1e6

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    """Runtime settings read from the environment"""

    seed: int = DEFAULT_SEED
    log_level: str = "WARNING"
    max_steps: int = DEFAULT_MAX_STEPS


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise QuiverArgumentError(f"{name} must be an integer, got '{raw}'")


def load_settings() -> Settings:
    """Build Settings from QMUT_* environment variables"""
    log_level = os.getenv("QMUT_LOG_LEVEL", "WARNING").strip().upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise QuiverArgumentError(f"QMUT_LOG_LEVEL has unknown level '{log_level}'")

    max_steps = _int_from_env("QMUT_MAX_STEPS", DEFAULT_MAX_STEPS)
    if max_steps <= 0:
        raise QuiverArgumentError(f"QMUT_MAX_STEPS must be positive, got {max_steps}")

    seed = _int_from_env("QMUT_SEED", DEFAULT_SEED)
    if seed < 0:
        raise QuiverArgumentError(f"QMUT_SEED must be non-negative, got {seed}")

    return Settings(
        seed=seed,
        log_level=log_level,
        max_steps=max_steps,
    )


def configure_logging(level: Optional[str] = None) -> None:
    """Send qmut logs to stderr; entrypoints call this, library modules never do"""
    if level is None:
        level = load_settings().log_level
    logging.basicConfig(level=level, format=LOG_FORMAT)
