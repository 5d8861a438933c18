"""Caps and budgets, plus a cooperative cancellation deadline."""

from __future__ import annotations

import contextlib
import contextvars
import time
from dataclasses import dataclass, replace

from .errors import Cancelled


@dataclass(frozen=True)
class Limits:
    element_cap: int = 1 << 20
    degree_cap: int = 64
    brute_cap: int = 512
    tuple_budget: int = 10**6

    def __post_init__(self):
        for name in ("element_cap", "degree_cap", "brute_cap", "tuple_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        # permutations are stored as bytes
        if self.degree_cap > 255:
            raise ValueError("degree_cap cannot exceed 255")


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("wreathlab_limits", default=Limits())
_DEADLINE: contextvars.ContextVar[float | None] = contextvars.ContextVar("wreathlab_deadline", default=None)


def limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def use_limits(**overrides):
    """Temporarily override caps, e.g. ``with use_limits(element_cap=4096): ...``."""
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


@contextlib.contextmanager
def deadline(seconds: float | None):
    if seconds is None:
        yield
        return
    token = _DEADLINE.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _DEADLINE.reset(token)


def checkpoint() -> None:
    """Raise :class:`Cancelled` once the active deadline has passed."""
    due = _DEADLINE.get()
    if due is not None and time.monotonic() > due:
        raise Cancelled("deadline expired")
