class DomainError(ValueError):
    """Input rejected on mathematical grounds (CLI exit code 1)."""


class ResourceBound(RuntimeError):
    """A configured size cap was hit (CLI exit code 2)."""
