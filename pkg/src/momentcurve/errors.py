"""Exception hierarchy shared by the whole package."""

from __future__ import annotations


class MomentCurveError(Exception):
    """Base class for every error raised by this package."""


class InvalidSimplexError(MomentCurveError):
    """A vertex list is empty, not strictly increasing, out of range,
    or too large for the ambient dimension."""


class InvalidInputError(MomentCurveError):
    """A documented precondition was violated by the caller."""


class UnsupportedError(MomentCurveError):
    """The operation is defined only for other parameter ranges
    (e.g. lattice meets exist only for d in {2, 3})."""


class ResourceBudgetError(MomentCurveError):
    """An explicit node/size budget was exhausted.  Carries partial
    statistics; never silently truncates a search."""

    def __init__(self, message: str, *, explored: int | None = None):
        super().__init__(message)
        self.explored = explored


class InternalConsistencyError(MomentCurveError):
    """A state the underlying theorems rule out was reached — always a
    bug, never a caller error.  Carries whatever state is useful for a
    bug report."""

    def __init__(self, message: str, *, state: object = None):
        super().__init__(message)
        self.state = state


class ExtensionStuck(InternalConsistencyError):
    """Greedy extension ran out of candidate facets while ridges remain
    active.  Impossible for d <= 4; a legitimate (and interesting)
    outcome for d >= 5, where the CLI reports the stuck state."""

    def __init__(self, message: str, *, facets=(), active_ridges=(), log=()):
        super().__init__(message, state={"facets": facets, "active_ridges": active_ridges})
        self.facets = tuple(facets)
        self.active_ridges = tuple(active_ridges)
        self.log = tuple(log)
