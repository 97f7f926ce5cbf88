"""Exception types shared across the package."""


class TriwellError(Exception):
    """Base class for all triwell-specific errors."""


class DegenerateCoefficients(TriwellError):
    """The closed-form mode coefficients are singular.

    Raised for the second eigenvalue when the gain/loss parameter is below
    the degeneracy threshold; the caller must switch to the analytic
    small-gamma branch.
    """


class NonConvergence(TriwellError):
    """An iterative solve did not reach its tolerance.

    Attributes
    ----------
    last_iterate : the best point reached, or None
    partial : partial results collected before the failure, or None
    """

    def __init__(self, message, last_iterate=None, partial=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.partial = partial


class OutOfRange(TriwellError):
    """A requested parameter lies outside the range where a solution exists."""


class NormTooSmall(TriwellError):
    """A mode's c-norm is too close to zero for the modal expansion.

    The time-evolution formula divides by the c-norm, which vanishes at an
    exceptional point; below the guard threshold the expansion is ill-defined.
    """
