"""Exception types shared across the package."""


class SeriesDynError(Exception):
    """Base class for all seriesdyn errors."""


class DimensionError(SeriesDynError):
    """State/field/series dimensions do not match."""


class SingularityError(SeriesDynError):
    """Closed-form solution evaluated at (or too close to) a singularity."""


class DegenerateError(SeriesDynError):
    """Input lies on a degenerate configuration (e.g. the origin of the
    spiral model, or parameters for which no finite singularity exists)."""


class InsufficientOrderError(SeriesDynError):
    """Too few usable series coefficients for the requested radius estimate."""


class NotAFixedPointError(SeriesDynError):
    """classify() was called at a point whose residual is too large."""


class RangeError(SeriesDynError):
    """Requested sample time outside the integrated interval."""


class IntegrationFailedError(SeriesDynError):
    """Integration ended with a non-completed status, so the requested
    output grid cannot be produced."""


class ModelFileError(SeriesDynError):
    """Model description file failed to parse or validate.

    ``location`` carries a human-readable position: either ``line L, column C``
    for JSON syntax errors or the offending key path for semantic errors.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{message} ({location})"
        super().__init__(message)
