"""Exception types raised by hyperchain."""


class HyperchainError(Exception):
    """Base class for all library errors."""


class MetricError(HyperchainError, ValueError):
    """Malformed distance matrix or space construction (shape, duplicates, axioms)."""


class DomainError(HyperchainError, ValueError):
    """Argument outside the domain of an operation (foreign space, unknown id, ...)."""


class PreconditionError(HyperchainError, ValueError):
    """An operation's precondition does not hold, e.g. a non-trapping region."""


class ResourceLimitError(HyperchainError, RuntimeError):
    """A configured enumeration or lift cap would be exceeded."""
