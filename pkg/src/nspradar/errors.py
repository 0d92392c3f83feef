"""Exception types raised by nspradar."""


class NspRadarError(Exception):
    """Base class for all package errors."""


class ShapeError(NspRadarError, ValueError):
    """Raised when array dimensions do not agree."""


class DomainError(NspRadarError, ValueError):
    """Raised when a value lies outside the domain of an operation."""


class NumericalError(NspRadarError, ArithmeticError):
    """Raised when a numerical routine fails (e.g. SVD non-convergence)."""


class ParseError(NspRadarError, ValueError):
    """Raised for malformed scenario files.

    The message always names the offending key (or section) and, when known,
    the 1-based line number.
    """

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
