"""Exception hierarchy shared by every module."""


class PathCalcError(Exception):
    """Base class for all library errors."""


class DomainError(PathCalcError, ValueError):
    """A value is outside the domain of an operation (irregular input, bad label...)."""


class VertexMismatchError(DomainError):
    pass


class IndexRangeError(DomainError, IndexError):
    """An operator index is invalid for the degree it is evaluated at."""


class BasisCapError(PathCalcError, MemoryError):
    """Enumerating a basis would exceed the configured size limit."""


class FormatError(PathCalcError, ValueError):
    """Malformed JSON/CSV input."""
