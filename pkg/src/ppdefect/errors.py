"""Exception and warning types raised by ppdefect."""


class PPDefectError(Exception):
    """Base class for all library errors."""


class AccuracyError(PPDefectError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to use them anyway.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ResolutionError(PPDefectError):
    """A sampled grid is too coarse or too narrow for the requested operation."""


class DegenerateStateError(PPDefectError):
    """A coefficient is undefined because its normalizing integral vanishes."""


class ApproximationDomainError(PPDefectError):
    """An approximate formula was called outside the regime where it holds."""


class NoViolationError(PPDefectError):
    """The parameters lie outside the regime where a violation bound is defined."""


class PhaseUndefinedWarning(UserWarning):
    """The overlap of two components vanishes, so no phase convention can be applied."""
