"""Exception hierarchy shared by all vacnoise modules."""


class VacnoiseError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(VacnoiseError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ModelError(VacnoiseError):
    """A cosmological model is inconsistent (e.g. H^2 < 0 somewhere)."""


class SingularityError(VacnoiseError):
    """Evaluation requested on or too close to a genuine singularity."""


class AccuracyError(VacnoiseError):
    """A numerical routine could not reach the requested tolerance.

    The best available estimate is attached so callers can decide
    whether to accept it.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class BracketError(VacnoiseError):
    """A root bracket does not enclose a sign change."""


class FitError(VacnoiseError):
    """A parameter fit failed; diagnostics attached when available."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
