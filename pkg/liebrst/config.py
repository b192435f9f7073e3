"""Lie BRST Config."""

import logging
import os

from .const import (
    DEFAULT_FLOAT_DIGITS,
    DEFAULT_HYPOTHESIS_MARGIN,
    DEFAULT_MAX_DIM,
    DEFAULT_MAX_DIM_V,
    DEFAULT_QUAD_ORDER,
    DEFAULT_SERIES_TOL,
    DEFAULT_WORKERS,
    ENV_MAX_DIM,
    ENV_MAX_DIM_V,
    ENV_WORKERS,
)
from .exceptions import ConfigError

_LOGGER = logging.getLogger(__name__)


def _env_positive_int(name: str, default: int) -> int:
    """Read a positive integer from the environment."""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as err:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from err
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    _LOGGER.debug("config: %s=%s", name, value)
    return value


class Config:
    """Config class."""

    def __init__(self) -> None:
        """Config init."""
        self.float_digits: int = DEFAULT_FLOAT_DIGITS
        self.hypothesis_margin: float = DEFAULT_HYPOTHESIS_MARGIN
        self.max_dim: int = _env_positive_int(ENV_MAX_DIM, DEFAULT_MAX_DIM)
        self.max_dim_v: int = _env_positive_int(ENV_MAX_DIM_V, DEFAULT_MAX_DIM_V)
        self.quad_order: int = DEFAULT_QUAD_ORDER
        self.series_tol: float = DEFAULT_SERIES_TOL
        self.workers: int = _env_positive_int(
            ENV_WORKERS, min(DEFAULT_WORKERS, os.cpu_count() or 1)
        )

    def check_dim(self, dim: int) -> None:
        """Reject algebras above the configured desk-scale cap."""
        if dim > self.max_dim:
            raise ConfigError(
                f"algebra dimension {dim} exceeds {ENV_MAX_DIM}={self.max_dim}"
            )

    def check_module(self, dim_v: int) -> None:
        """Reject modules above the configured cap before any matrix is built."""
        if dim_v > self.max_dim_v:
            raise ConfigError(
                f"module dimension {dim_v} exceeds {ENV_MAX_DIM_V}={self.max_dim_v}"
            )
