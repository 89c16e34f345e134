"""Exception types raised by the library."""


class ConnMatchError(Exception):
    """Base class for all library errors."""


class PreconditionError(ConnMatchError, ValueError):
    """An input violates the documented precondition of an operation."""


class RankError(PreconditionError):
    """Selection rank out of range, or empty input."""


class NoIntersectionError(ConnMatchError):
    """A ray does not meet the convex hull."""


class InfeasibleError(ConnMatchError):
    """A requested pairing cannot be completed."""


class ResolutionError(ConnMatchError):
    """A construction cannot be realized within the coordinate bound."""


class SizeLimitError(PreconditionError):
    """Input too large for an exhaustive routine."""
