"""Error types shared across the package."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds its size guard (full-space solver)."""


class NoCrossingError(RuntimeError):
    """Raised when a crossing search bracket contains no sign change."""
