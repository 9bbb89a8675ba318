"""Exception hierarchy shared across the package."""


class KpzEdgeError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(KpzEdgeError, ValueError):
    """An argument violates a documented precondition."""


class DivergenceError(KpzEdgeError):
    """ODE solution blew up; carries the last x where it was still sane."""

    def __init__(self, message, last_good_x=None):
        super().__init__(message)
        self.last_good_x = last_good_x


class AccuracyError(KpzEdgeError):
    """A numerical routine failed to converge to its stated tolerance."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class TruncationError(KpzEdgeError):
    """A point configuration is not deep enough for the requested statistic."""

    def __init__(self, message, needed_depth=None):
        super().__init__(message)
        self.needed_depth = needed_depth


class ConsistencyError(KpzEdgeError):
    """An internal identity that must hold for valid inputs was violated."""
