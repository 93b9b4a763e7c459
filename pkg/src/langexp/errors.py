"""Exception types raised by langexp."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(ArithmeticError):
    """An iterative solver ran out of iterations.

    The last iterate and its residual are kept so callers can decide
    whether the answer is usable anyway.
    """

    def __init__(self, message, x, residual, iterations):
        super().__init__(message)
        self.x = x
        self.residual = residual
        self.iterations = iterations


class UnfittableError(DomainError):
    """The sample mean sits on (or beyond) a truncation bound."""


class InsufficientDataError(ValueError):
    """Too few observations for the requested statistic."""
