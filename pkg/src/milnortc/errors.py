"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A graded slice exceeded the configured dimension cap."""

    def __init__(self, message, dimension=None, cap=None):
        super().__init__(message)
        self.dimension = dimension
        self.cap = cap


class ExprSyntaxError(ValueError):
    """Factor expression failed to parse; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NoFreeActionError(ValueError):
    """Requested an equivariant bound for a space without the free action."""
