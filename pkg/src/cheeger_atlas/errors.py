"""Exception types shared across the library."""


class CheegerAtlasError(Exception):
    """Base class for all library errors."""


class DegenerateInput(CheegerAtlasError):
    """Input does not span a 2-dimensional region (collinear, too few points...)."""


class UnboundedRegion(CheegerAtlasError):
    """A half-plane intersection is unbounded."""


class InvalidParam(CheegerAtlasError):
    """A shape parameter violates its admissible range."""


class Unsupported(CheegerAtlasError):
    """Requested closed form does not exist for this family."""


class Unreachable(CheegerAtlasError):
    """A parameter solve cannot reach the requested target value."""


class NonMonotone(CheegerAtlasError):
    """A sampled scan detected non-monotone behaviour where monotone was required."""


class OutOfRange(CheegerAtlasError):
    """A value lies outside the range of an invertible function."""


class DomainError(CheegerAtlasError):
    """Arguments violate a formula's domain."""


class NoRoot(CheegerAtlasError):
    """A bracketed scan found no sign change."""


class PolygonJsonError(CheegerAtlasError):
    """Structured rejection of a polygon JSON document.

    Carries a machine-readable ``code`` next to the human message; no
    line/column information is attached.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message
