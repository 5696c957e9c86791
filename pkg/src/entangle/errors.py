"""Exception types raised by the entangle package."""


class EntangleError(Exception):
    """Base class for all package errors."""


class InvalidInputError(EntangleError, ValueError):
    """An argument violates a documented precondition."""


class InvalidPartitionError(InvalidInputError):
    """A bipartition subset is empty, covers every factor, or is out of range."""


class NumericalFailureError(EntangleError, ArithmeticError):
    """An iterative routine did not converge within its iteration cap."""


class UndefinedMeasureError(EntangleError, ValueError):
    """The normalized measure has no value for a one-level subsystem."""
