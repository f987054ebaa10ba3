"""Exception types shared across the package."""


class EvcopError(Exception):
    """Base class for errors raised by this package."""


class InvalidSpecError(EvcopError, ValueError):
    """A distribution or model specification violates its parameter range."""


class UnsupportedOperationError(EvcopError, RuntimeError):
    """The requested operation is not available for the given inputs."""


class NumericError(EvcopError, RuntimeError):
    """A numerical routine failed to reach its accuracy target."""
