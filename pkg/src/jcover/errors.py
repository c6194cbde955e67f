"""Exception types shared across the package."""


class JCoverError(Exception):
    """Base class for all jcover errors."""


class FormatError(JCoverError):
    """A file or serialized payload could not be parsed."""


class PreconditionError(JCoverError):
    """An operation was called on inputs that violate its preconditions."""


class VerificationError(JCoverError):
    """A constructed object fails its defining property (cover, code, design)."""


class BudgetExceededError(JCoverError):
    """A solver ran out of its node or time budget."""
