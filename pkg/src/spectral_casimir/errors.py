"""Exception hierarchy shared by the library and the CLI."""


class SpectralCasimirError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SpectralCasimirError, ValueError):
    """Invalid input parameters (bad grid, negative radius, ...)."""


class DomainError(SpectralCasimirError, ValueError):
    """Input outside the domain where an operation is defined."""


class UnsupportedModelError(SpectralCasimirError, ValueError):
    """Dielectric model variant not accepted by an operation."""


class UnknownMaterialError(SpectralCasimirError, KeyError):
    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(name)

    def __str__(self):
        return f"unknown material {self.name!r}; available: {', '.join(self.available)}"


class NumericalError(SpectralCasimirError, ArithmeticError):
    """A numerical procedure failed (poles, non-convergence)."""


class SingularValueError(NumericalError):
    """Evaluation hit a pole, e.g. eps_sphere == eps_ambient in u(omega)."""


class PoleError(NumericalError):
    """Green's operator evaluated on (or numerically at) one of its poles."""


class QuadratureError(NumericalError):
    def __init__(self, message, *, estimate=None, error=None, intervals=None):
        self.estimate = estimate
        self.error = error
        self.intervals = intervals
        super().__init__(
            f"{message} (estimate={estimate!r}, error={error!r}, intervals={intervals!r})"
        )
