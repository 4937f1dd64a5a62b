"""Universe-size cap for exhaustive subset enumerations."""

from __future__ import annotations

import contextlib
import contextvars
import os

from .errors import CapExceededError, InputError

DEFAULT_MAX_UNIVERSE = 16
HARD_MAX_UNIVERSE = 24
ENV_VAR = "ROUGH_NELSON_MAX_UNIVERSE"

_cap: contextvars.ContextVar[int | None] = contextvars.ContextVar("max_universe", default=None)


def validate_cap(value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InputError(f"max universe must be a non-negative integer, got {value!r}")
    if value > HARD_MAX_UNIVERSE:
        raise InputError(f"max universe {value} exceeds the hard cap of {HARD_MAX_UNIVERSE}")
    return value


def current_cap() -> int:
    """Active cap: the innermost ``universe_cap`` block, else the environment, else the default."""
    value = _cap.get()
    if value is not None:
        return value
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return validate_cap(int(raw))
        except ValueError as exc:
            raise InputError(f"{ENV_VAR}={raw!r} is not a valid cap") from exc
    return DEFAULT_MAX_UNIVERSE


@contextlib.contextmanager
def universe_cap(value: int):
    token = _cap.set(validate_cap(value))
    try:
        yield value
    finally:
        _cap.reset(token)


def require_within_cap(what: str, size: int) -> None:
    cap = current_cap()
    if size > cap:
        raise CapExceededError(what, size, cap)
