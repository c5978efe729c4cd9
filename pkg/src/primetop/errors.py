"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """A precondition on an argument was violated."""


class ResourceLimitError(RuntimeError):
    """A configured size/recursion budget was exceeded."""


class RankDiscrepancyError(RuntimeError):
    """GF(p) and exact rational ranks disagree; retry with another prime."""

    def __init__(self, message: str, field_prime: int):
        super().__init__(message)
        self.field_prime = field_prime


class ClassificationError(RuntimeError):
    """A stable sphere was neither a sphere nor contractible."""


class InternalConsistencyError(RuntimeError):
    """A verified-by-construction property failed; indicates a bug or bad input."""
