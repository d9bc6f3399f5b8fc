"""Exception hierarchy shared by all uncq modules."""


class UncqError(Exception):
    """Base class for every error raised by uncq."""


class DimensionMismatch(UncqError, ValueError):
    pass


class NotHermitian(UncqError, ValueError):
    pass


class NoConvergence(UncqError, RuntimeError):
    pass


class NotDensity(UncqError, ValueError):
    pass


class StateError(UncqError, ValueError):
    """Raised when a state cannot be constructed from the given parameters."""


class ParameterOutOfRange(StateError):
    pass


class UnphysicalParameters(StateError):
    pass


class IncompatiblePair(UncqError, ValueError):
    pass


class EmptySearchSpace(UncqError, ValueError):
    pass


class InvalidSpec(UncqError, ValueError):
    pass


class SpecParseError(UncqError, ValueError):
    """A state or direction specification string could not be parsed."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token
