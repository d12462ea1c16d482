"""Exception hierarchy shared across the package.

Every error raised on purpose derives from :class:`CodanormError`, so callers
(and the command line front end) can separate deliberate diagnostics from
genuine bugs.  The two intermediate classes mirror how the CLI maps failures
to exit codes: validation problems are the caller's fault (bad values, bad
shapes, bad files), numerical problems mean the computation itself could not
be completed reliably.
"""


class CodanormError(Exception):
    """Base class for all deliberate errors raised by this package."""


class ValidationError(CodanormError, ValueError):
    """Input rejected before any computation was attempted."""


class NumericalError(CodanormError, ArithmeticError):
    """Computation attempted but could not be completed reliably."""


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------

class NonPositivePartError(ValidationError):
    """A value or vector component is zero, negative, NaN or infinite where a
    strictly positive real is required."""


class DimensionMismatchError(ValidationError):
    """Operands do not share the number of parts, coordinate dimension or
    closure constant required by the operation."""


class ClosureError(ValidationError):
    """A vector claimed to be closed does not sum to its closure constant
    within tolerance."""


class InvalidSelectionError(ValidationError):
    """A subcomposition selection or permutation is not a valid index set."""


class NotSPDError(ValidationError):
    """A matrix supposed to be symmetric positive definite is not."""


class DegenerateScaleError(ValidationError):
    """A scaling coefficient that must be nonzero is zero."""


class BadIntervalError(ValidationError):
    """Interval endpoints are not ordered inside the support."""


class EmptyDataError(ValidationError):
    """A data collection that must be non-empty is empty."""


class InsufficientDataError(ValidationError):
    """Too few observations for the requested estimate or test."""


class DatasetValidationError(ValidationError):
    """A data file failed validation; ``problems`` lists one message per
    offending row or field."""

    def __init__(self, problems):
        self.problems = list(problems)
        preview = "; ".join(self.problems[:5])
        more = "" if len(self.problems) <= 5 else f" (+{len(self.problems) - 5} more)"
        super().__init__(f"{len(self.problems)} problem(s) in dataset: {preview}{more}")


class DegenerateVarianceError(ValidationError):
    """The data admit no spread estimate: every observation is identical."""


# --------------------------------------------------------------------------
# numerical
# --------------------------------------------------------------------------


class SingularCovarianceError(NumericalError):
    """An estimated covariance matrix is singular (or nearly so)."""


class QuadratureUnstableError(NumericalError):
    """A quadrature result changed materially when the rule was refined."""
