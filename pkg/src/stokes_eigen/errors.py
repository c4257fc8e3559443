"""Exception types raised across the package."""


class StokesEigenError(Exception):
    """Base class for all package errors."""


class DomainError(StokesEigenError, ValueError):
    """Input lies outside the domain of a coordinate map or special function."""


class SingularPointError(DomainError):
    """Point lies on (or within the singular threshold of) a singular locus."""


class SeriesTermError(DomainError):
    """A single term of a series expansion could not be evaluated."""

    def __init__(self, term_index, cause):
        self.term_index = term_index
        super().__init__(f"term {term_index}: {cause}")


class BesselOverflowError(StokesEigenError, OverflowError):
    """Result of a Bessel function evaluation is not representable as a float."""


class ConvergenceError(StokesEigenError, RuntimeError):
    """An iterative method did not converge within its iteration cap."""

    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (final residual {residual:.3e})")


class RankDeficiencyError(StokesEigenError, ArithmeticError):
    """A least-squares design matrix is numerically rank deficient."""

    def __init__(self, message, condition_estimate):
        self.condition_estimate = condition_estimate
        super().__init__(f"{message} (condition estimate {condition_estimate:.3e})")


class EmptyGridError(StokesEigenError, ValueError):
    """A grid or sample set has no usable points after exclusions."""
