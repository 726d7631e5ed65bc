"""Exception hierarchy. Config/domain problems vs numeric failures map to
different CLI exit codes (2 and 3)."""


class MKZError(Exception):
    """Base class for all library errors."""


class DomainError(MKZError, ValueError):
    """A point or parameter lies outside the admissible domain."""


class SingularityError(DomainError):
    """Evaluation hits the removable pole of the spectral factor."""


class NumericFailure(MKZError, ArithmeticError):
    """Base class for failures of the numerical machinery."""


class TruncationError(NumericFailure):
    """The series tail cannot be certified within ``max_terms``."""


class QuadratureError(NumericFailure):
    """Adaptive quadrature did not reach the requested tolerance."""


class DivergenceError(QuadratureError):
    """The integrand grows too fast for the half-line functional to exist."""
