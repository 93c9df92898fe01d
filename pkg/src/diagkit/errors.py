"""Shared exception types."""


class InputError(ValueError):
    """Structurally invalid input: bad dimensions, open terms, unknown symbols."""


class NotApplicableError(RuntimeError):
    """A construction's hypothesis is violated (e.g. the endomap has a fixed point)."""
