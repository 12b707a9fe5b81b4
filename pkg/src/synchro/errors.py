"""Exception hierarchy shared by every module of the package."""


class SynchroError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(SynchroError, ValueError):
    """Malformed input: out-of-range state or letter, bad table shape, etc."""


class PreconditionError(SynchroError, ValueError):
    """Input is well formed but violates an operation's precondition."""


class UnsupportedInputError(SynchroError, ValueError):
    """Input is outside the class of automata an operation handles."""


class ResourceLimitError(SynchroError, RuntimeError):
    """An exponential search would exceed the configured state cap."""
