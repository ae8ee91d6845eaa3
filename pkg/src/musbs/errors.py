"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(OverflowError):
    """Result not representable as a finite double."""


class DegenerateInputError(ValueError):
    """Input is structurally valid but carries no information (e.g. a zero pair)."""


class QuadratureAccuracyError(ArithmeticError):
    """Subdivision budget exhausted before reaching the requested tolerance.

    The best available estimate and its error bound are attached so callers
    can decide whether the result is still usable.
    """

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class DivergenceError(ArithmeticError):
    """An integral over (0, inf) does not converge."""


class InconclusiveTailError(RuntimeError):
    """Tail behaviour could not be classified within the radius budget."""


class IntegrationError(RuntimeError):
    """The ODE integrator could not make progress (step-size underflow)."""
