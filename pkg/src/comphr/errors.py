"""Shared exception types."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""
