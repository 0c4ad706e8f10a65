"""Exception types raised across the library."""


class BregsimError(Exception):
    """Base class for all library-specific errors."""


class DomainError(BregsimError, ValueError):
    """Input lies outside the domain of a convex cost.

    Attributes
    ----------
    component : int or None
        Index of the first offending vector component.
    row : int or None
        Row index, when the input was a batch of vectors.
    """

    def __init__(self, message, *, component=None, row=None):
        super().__init__(message)
        self.component = component
        self.row = row


class DimensionError(BregsimError, ValueError):
    """Vector dimension unsupported by the operation."""


class DimensionMismatchError(BregsimError, ValueError):
    """Two vectors (or datasets) that must share a dimension do not."""


class ZeroVectorError(BregsimError, ValueError):
    """Angle-based comparison attempted on an all-zero vector."""


class ZeroGradientError(BregsimError, ValueError):
    """Tangent direction undefined because the gradient vanishes."""


class UnsupportedCostError(BregsimError, TypeError):
    """Operation applied to a cost function it is not defined for."""


class CsvParseError(BregsimError, ValueError):
    """A CSV cell or row could not be parsed."""


class CsvSchemaError(BregsimError, ValueError):
    """CSV schema is inconsistent with the file contents."""


class SyntheticSpecError(BregsimError, ValueError):
    """Invalid synthetic sample generator specification."""
