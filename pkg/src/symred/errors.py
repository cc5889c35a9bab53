"""Exception types shared by all modules."""


class SymredError(Exception):
    """Base class for errors raised by the package."""


class PreconditionError(SymredError, ValueError):
    """An input violates a documented precondition."""


class UnsupportedError(SymredError):
    """The request is valid but outside what the implementation handles."""


class ConvergenceError(SymredError, ArithmeticError):
    """An iterative routine hit its iteration cap."""


class CapacityError(SymredError):
    """A size cap (group order, tableau count, ...) was exceeded."""
