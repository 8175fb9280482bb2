"""Global size guard for expensive constructions."""

from __future__ import annotations

import os

DEFAULT_MAX_DIM = 5040
_override: int | None = None


class DimensionLimitExceeded(RuntimeError):
    """Raised before building an object larger than the configured limit."""


def max_dim() -> int:
    if _override is not None:
        return _override
    env = os.environ.get("NILWEYL_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


def set_max_dim(value: int | None) -> None:
    global _override
    _override = value


def check_dim(dim: int, what: str) -> None:
    limit = max_dim()
    if dim > limit:
        raise DimensionLimitExceeded(f"{what} has dimension {dim} > max-dim {limit}")
