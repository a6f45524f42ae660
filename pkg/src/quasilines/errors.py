"""Exception hierarchy shared by all modules."""


class QuasilinesError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuasilinesError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConfigurationError(QuasilinesError, ValueError):
    """Objects were combined in a way that cannot work (incompatible maps, bad masks)."""


class ConvergenceError(QuasilinesError, ArithmeticError):
    """An iterative method stopped without meeting its tolerance.

    The last residual is kept on the instance so callers can decide what to do.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class SingularError(QuasilinesError, ArithmeticError):
    """A derivative vanished where an invertible one was required."""


class ExtractionError(QuasilinesError, RuntimeError):
    """A contour could not be assembled into a single streamline."""


class BracketError(QuasilinesError, ValueError):
    """A root-finding bracket does not straddle the target value."""
