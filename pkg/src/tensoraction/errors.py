"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid input: bad type/rank pair, non-dominant weight, malformed graph, ..."""


class InternalConsistencyError(RuntimeError):
    """A certified internal invariant failed; indicates a bug, never bad input."""
