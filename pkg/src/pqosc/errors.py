"""Exception types shared across the package."""


class DeformationError(ValueError):
    """Base class for invalid inputs and failed checks."""


class InvalidParamsError(DeformationError):
    pass


class InvalidBaseError(InvalidParamsError):
    """A preset needs a logarithm in base 1."""


class DomainError(DeformationError):
    """An index lies outside the range where a quantity is defined."""


class OutOfRangeError(OverflowError):
    """A value overflows double precision.

    The natural log of the magnitude and the sign are kept so callers can
    still compare or report the value.
    """

    def __init__(self, message, log_abs, sign):
        super().__init__(message)
        self.log_abs = log_abs
        self.sign = sign


class PositivityError(DeformationError):
    """f(n) (or lambda_n) is negative where a square root is needed."""

    def __init__(self, message, n):
        super().__init__(message)
        self.n = n


class MissingParameterError(DeformationError):
    pass


class NoRepresentationError(DeformationError):
    """No irreducible representation exists for the given data."""
