"""Exception types."""


class DomainError(ValueError):
    """Argument outside an operation's domain."""


class NumericalError(ArithmeticError):
    """A computation could not produce a meaningful number."""


class DegenerateInputError(NumericalError):
    """Post-selection probability too small for the output state to mean anything."""


class ConvergenceError(NumericalError):
    """Iteration did not settle; ``last`` holds the final iterate."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last
