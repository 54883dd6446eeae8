"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates the documented precondition of an operation."""


class ConvergenceError(ArithmeticError):
    """An iterative solver or integrator failed to reach its tolerance."""
