"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SPColorError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SPColorError, ValueError):
    """Malformed multigraph input."""


class LoopEdge(GraphError):
    pass


class DuplicateClass(GraphError):
    pass


class BadVertexId(GraphError):
    pass


class ZeroMultiplicity(GraphError):
    pass


class VertexAbsent(SPColorError, KeyError):
    pass


class PreconditionViolated(SPColorError):
    pass


class NotSeriesParallel(SPColorError):
    pass


class TraceMismatch(SPColorError):
    """A reduction frame does not fit the coloring being rebuilt (a bug, not bad input)."""


class ShapeMismatch(SPColorError, ValueError):
    pass


class BudgetExceeded(SPColorError):
    pass


class NoneFound(SPColorError):
    pass


class ParseError(SPColorError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
