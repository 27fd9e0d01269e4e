"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InputError``/``DataError`` -> 2,
``ResourceError`` -> 3.
"""


class DcFactorError(Exception):
    pass


class InputError(DcFactorError, ValueError):
    """Caller passed something outside an operation's precondition."""


class DataError(DcFactorError):
    """A shipped or user data file is malformed or fails its own assertions."""


class ResourceError(DcFactorError):
    """A configured enumeration/index bound would be exceeded."""


class ConsistencyError(DcFactorError, AssertionError):
    """Internal invariant broken; indicates a bug, never bad input."""
