"""Exception types shared across the package."""


class IdealGraphError(Exception):
    """Base class for errors raised by idealgraph."""


class DomainError(IdealGraphError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(IdealGraphError):
    """An element-level computation would exceed its configured size cap."""
