"""Exception hierarchy shared by the library and the command line."""


class PKPError(Exception):
    """Base class for all errors raised by pkpcount."""


class ParameterError(PKPError, ValueError):
    """A parameter violates a stated constraint.

    ``constraint`` names the violated condition so callers (the CLI in
    particular) can report it verbatim.
    """

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class CapExceeded(PKPError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, message, size=None, cap=None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class SamplingError(PKPError, RuntimeError):
    """A rejection sampler hit its iteration cap."""


class InstanceFormatError(PKPError, ValueError):
    """An instance document is malformed or inconsistent."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
