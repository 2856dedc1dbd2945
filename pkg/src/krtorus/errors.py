"""Error types shared across the package."""


class InvalidInputError(ValueError):
    """A precondition on user-supplied data failed."""


class ConsistencyError(RuntimeError):
    """An internal invariant broke; indicates a bug, not bad input."""
