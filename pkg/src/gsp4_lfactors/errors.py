"""Exception hierarchy shared by all modules."""


class GSp4Error(Exception):
    """Base class for errors raised by this package."""


class InputError(GSp4Error, ValueError):
    """Malformed or inconsistent input: declarations, parameters, notation."""


class UndeclaredFlagError(InputError):
    """A query needs a declared Waldspurger-type flag that was not provided."""


class NoBesselModelError(GSp4Error):
    """The requested Bessel model does not exist; the result is empty."""
