"""Exception types raised by the library."""


class GQIError(ValueError):
    """Base class for all library errors."""


class DimensionError(GQIError):
    """Matrix or vector shapes are inconsistent with a mode count."""


class InvalidStateError(GQIError):
    """A covariance matrix violates the uncertainty relation."""


class DecompositionError(GQIError):
    """Williamson decomposition failed (input not positive definite)."""


class SingularMetricError(GQIError):
    """A tangent direction excites a metric term that diverges at the given state."""


class PreconditionError(GQIError):
    """A closed-form formula was called outside its domain."""


class CutoffError(GQIError):
    """Fock truncation lost more probability than allowed."""

    def __init__(self, message, deficit):
        super().__init__(message)
        self.deficit = deficit
