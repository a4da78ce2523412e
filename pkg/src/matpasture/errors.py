"""Exceptions shared across the package. The CLI maps each to an exit code."""


class ValidationError(ValueError):
    """Input does not satisfy a structural requirement (exit code 2)."""


class ResourceLimitError(RuntimeError):
    """A search would exceed the desk-scale cap (exit code 3)."""


class UndecidedAtBound(RuntimeError):
    """A null-sum query on a presented pasture is longer than the decidable bound (exit code 4)."""
