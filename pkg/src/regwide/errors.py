"""Exception hierarchy shared by the library and the CLI."""


class RegwideError(Exception):
    """Base class for every error raised by :mod:`regwide`."""


class InputError(RegwideError, ValueError):
    """Malformed or inconsistent user input (CLI exit status 2)."""


class UnsupportedRootSystem(InputError):
    pass


class NotARoot(InputError):
    pass


class NotARootSum(InputError):
    pass


class NotDominant(InputError):
    pass


class NotClosed(InputError):
    pass


class CapExceeded(RegwideError):
    """A configured resource cap was hit (CLI exit status 3)."""
