"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain of an operation (non-finite, out of range)."""


class UnsupportedModeError(ValueError):
    """Operation requested for a potential mode it has no solution for."""


class SingularityError(ArithmeticError):
    """Closed-form expression evaluated at a removable or true singularity."""


class NumericalFailure(ArithmeticError):
    """A numerical procedure did not reach its accuracy target.

    Attributes
    ----------
    estimate : float or None
        Best available value at the point of failure.
    error : float or None
        Estimated absolute error of ``estimate``.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
