"""Exception hierarchy shared across the package."""


class SpinlabError(Exception):
    """Base class for all domain errors raised by spinlab."""


class StructureError(SpinlabError):
    """A structure-constant tensor is malformed (shape or antisymmetry)."""


class InvalidMetricError(SpinlabError):
    """An inner product matrix is not symmetric positive-definite."""


class InvalidFrameError(SpinlabError):
    """A frame-change matrix is not upper-triangular with positive diagonal."""


class InvalidParameterError(SpinlabError):
    """A catalog or CLI parameter is outside its admissible range."""


class InvalidSpinorError(SpinlabError):
    """A spinor argument is unusable (zero, or wrong coefficient length)."""


class InvalidOperatorError(SpinlabError):
    """An operator argument violates its contract (e.g. not skew-symmetric)."""


class UnsupportedDimensionError(SpinlabError):
    """The operation requires an odd-dimensional algebra."""


class FormatError(SpinlabError):
    """A JSON document does not follow the documented schema."""
