"""Exception types shared by every module.

The CLI maps these onto exit codes: InputError -> 2, DomainError -> 3,
ResourceError -> 4.
"""


class GalmodError(Exception):
    pass


class InputError(GalmodError, ValueError):
    """Malformed or out-of-range arguments."""


class DomainError(GalmodError, ValueError):
    """Well-formed arguments that violate a mathematical hypothesis."""


class ResourceError(GalmodError, RuntimeError):
    """An enumeration would exceed the configured size bound."""
