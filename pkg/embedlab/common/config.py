"""Environment-driven settings.

Read at call time (not import time) so tests and the CLI can flip them
through ``os.environ``.
"""

from __future__ import annotations

import os

from .errors import ConfigError

DEFAULT_MAX_N = 20
DEFAULT_MAX_N0 = 2048

MAX_N_ENV = "EMBEDLAB_MAX_N"
MAX_N0_ENV = "EMBEDLAB_MAX_N0"
VERBOSE_ENV = "EMBEDLAB_VERBOSE"


def _read_cap(env: str, default: int) -> int:
    raw = os.environ.get(env, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{env} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{env} must be at least 1, got {value}")
    return value


def get_max_n() -> int:
    """Hard cap on the truncation level of M (2^n points)."""
    return _read_cap(MAX_N_ENV, DEFAULT_MAX_N)


def get_max_n0() -> int:
    """Hard cap on the truncation level of (N_0, rho) (n + 1 points, dense matrix)."""
    return _read_cap(MAX_N0_ENV, DEFAULT_MAX_N0)


def is_verbose() -> bool:
    return os.environ.get(VERBOSE_ENV, "").strip().lower() in ("1", "true", "yes")
