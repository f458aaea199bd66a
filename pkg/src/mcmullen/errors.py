"""Exception types shared across the package."""


class PoleError(ValueError):
    """The map was evaluated at its pole z = 0."""


class HypothesisError(ValueError):
    """Inputs lie outside the hypotheses a geometric construction or check needs."""


class RootFindingError(RuntimeError):
    """The simultaneous root iteration did not reach the residual bound."""


class InconsistencyError(RuntimeError):
    """Computed results violate a structural relation they are required to satisfy
    (e.g. a sector index that does not round to an integer, or a solution count
    that contradicts a guaranteed count)."""


class UnderSamplingError(RuntimeError):
    """A contour walk took an angular step too large to certify the winding total;
    retry with more boundary samples."""
