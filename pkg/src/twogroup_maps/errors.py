"""Exception hierarchy shared by every module."""


class GroupError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(GroupError, ValueError):
    """A family parameter lies outside its allowed range."""


class MalformedElementError(GroupError, ValueError):
    """An exponent tuple is not a valid normal form for the group."""


class ScaleError(GroupError):
    """An exhaustive or oracle operation was asked to run beyond its gate."""


class KindMismatchError(GroupError, ValueError):
    """A tuple's kind does not fit the requested operation."""
