"""Exception hierarchy shared by all modules."""


class FinslerError(Exception):
    """Base class for all library errors."""


class DomainError(FinslerError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InputError(FinslerError, ValueError):
    """Structurally invalid input (dimension mismatch, bad config, ...)."""


class ModelError(FinslerError):
    """A user-supplied callable violated its contract (negative norm, NaN, ...)."""


class ConvergenceError(FinslerError):
    """An iterative solver failed to converge.

    ``best`` carries the best estimate found so far, when one exists.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class PrecisionError(FinslerError):
    """A quadrature could not reach the requested tolerance."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class DivergenceError(FinslerError):
    """The integral appears to diverge (non-integrable singularity or tail)."""


class SearchError(FinslerError):
    """A bracketing/scanning search failed to locate its target."""


class EfficiencyError(FinslerError):
    """Monte Carlo acceptance rate too low to produce a usable estimate."""


class AdmissibilityError(FinslerError):
    """A profile does not satisfy the hypotheses of the inequality."""
