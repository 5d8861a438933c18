"""Exception hierarchy shared by every module."""

from __future__ import annotations


class WreathLabError(Exception):
    """Base class for all library errors."""


class CapExceeded(WreathLabError):
    """A group, degree or search would exceed a configured cap."""


class BudgetExceeded(WreathLabError):
    """An exhaustive search would exceed its tuple budget.

    Distinct from a search that ran to completion and found nothing.
    """


class Cancelled(WreathLabError):
    """The active deadline expired inside a long-running computation."""


class NotAbelian(WreathLabError, ValueError):
    pass


class NotSolvable(WreathLabError, ValueError):
    pass


class NotNilpotent(WreathLabError, ValueError):
    pass


class NotNormal(WreathLabError, ValueError):
    pass


class PerfectGroupError(WreathLabError, ValueError):
    """dg is left undefined for nontrivial perfect groups."""


class ConstructionDefect(WreathLabError):
    """A map that must be a homomorphism by theorem failed verification.

    This always indicates an implementation bug, never bad user input.
    """


class GroupExpressionError(WreathLabError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
