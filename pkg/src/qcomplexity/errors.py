"""Exception hierarchy."""


class ComplexityError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMachine(ComplexityError, ValueError):
    pass


class NonUniqueStationary(ComplexityError):
    """The state chain has more than one closed communicating class."""


class InvalidStart(ComplexityError, ValueError):
    pass


class DimensionMismatch(ComplexityError, ValueError):
    pass


class NotSymmetric(ComplexityError, ValueError):
    pass


class NotDensityOperator(ComplexityError, ValueError):
    pass


class InvalidDensity(ComplexityError, ValueError):
    pass


class OutOfRange(ComplexityError, ValueError):
    pass


class Degenerate(ComplexityError, ValueError):
    pass


class TooShort(ComplexityError, ValueError):
    pass


class InsufficientData(ComplexityError):
    pass


class FlatFunction(ComplexityError):
    """Objective is identically (numerically) zero, so no peak exists."""
