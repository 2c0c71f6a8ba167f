"""Exception hierarchy shared by all modules."""


class JacobLadderError(Exception):
    """Base class for every error raised by this package."""


class DomainError(JacobLadderError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class AccuracyUnreachableError(JacobLadderError):
    """Requested tolerance is below what the chosen method can deliver."""


class ConvergenceError(JacobLadderError):
    """An iterative solver failed to converge."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class OrderingError(JacobLadderError, ValueError):
    """Interval endpoints given in the wrong order."""


class CoverageError(JacobLadderError):
    """A table (zeros, ladder, sieve) does not cover the requested range."""

    def __init__(self, message, covered=None):
        super().__init__(message)
        self.covered = covered


class QuadratureError(JacobLadderError):
    """Adaptive quadrature exhausted its budget; carries the best estimate."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class IntegrandNaNError(JacobLadderError):
    """The integrand produced a NaN or infinity."""


class BracketError(JacobLadderError, ValueError):
    """Target value is not bracketed by the function values at the ends."""


class NonMonotoneError(JacobLadderError):
    """A function assumed monotone was observed not to be."""


class PreconditionError(JacobLadderError, ValueError):
    """A documented precondition of an operation is violated."""


class InadmissibleIntervalError(JacobLadderError):
    """A Gram interval fails the admissibility conditions and was not forced."""


class FixtureError(JacobLadderError):
    """A golden fixture file is missing or malformed."""


class TableFormatError(JacobLadderError, ValueError):
    """A saved ladder table cannot be read back consistently."""
