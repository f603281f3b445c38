"""Error hierarchy shared by every service and mapped to CLI exit codes."""


class SldCorrelError(Exception):
    """Base class of all package errors."""


class DomainError(SldCorrelError, ValueError):
    """A precondition of an operation is violated (exit code 2)."""


class NumericalError(SldCorrelError, ArithmeticError):
    """
    A computation failed numerically (exit code 3).

    `partial` holds the best value reached before giving up, when there is one.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NonConvergenceError(NumericalError):
    """An iterative method (quadrature, series, root search) missed its tolerance."""


class ExpansionError(NumericalError):
    """An asymptotic expansion is unusable at the requested order and scale."""
