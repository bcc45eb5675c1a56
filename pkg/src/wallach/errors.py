"""Exception types shared across the package."""


class WallachError(Exception):
    """Base class for all package-specific errors."""


class ZeroPolynomial(WallachError):
    """An operation that requires a nonzero polynomial received the zero polynomial."""


class EndpointRoot(WallachError):
    """The polynomial vanishes at an interval endpoint where a definite sign is required."""


class NotIsolating(WallachError):
    """The supplied interval does not isolate exactly one root."""


class BothConstant(WallachError):
    """Resultant elimination needs at least one input depending on the eliminated variable."""


class IncompatibleRadicands(WallachError):
    """Arithmetic mixed two quadratic-extension values over different radicands."""


class BadLine(WallachError):
    """Catalog line number outside 1..15."""


class BadParams(WallachError):
    """Catalog family parameters violate the line's constraints."""


class BadParam(WallachError):
    """Invalid parameter for a closed-form family."""


class BoundaryInput(WallachError):
    """A boundary point (some a_i = 1/2) was passed where the open cube is required."""


class OutOfRange(WallachError):
    """Argument outside the admissible range of the operation."""


class SegmentInconclusive(WallachError):
    """Both reference segment tests crossed the zero surface; classification refused."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class IndistinguishableAtTolerance(WallachError):
    """Two interval metrics can neither be separated nor merged at the given tolerance."""


class CertificationFailure(WallachError):
    """A candidate root could not be confirmed or excluded at the requested width."""


class DegenerateSystem(WallachError):
    """An equation of the Einstein system vanished identically."""


class NonPositiveMetric(WallachError):
    """Metric components must be strictly positive."""


class NonPositiveStart(WallachError):
    """Flow integration requires a strictly positive starting metric."""


class StepTooLarge(WallachError):
    """Integration step rejected by the conservation-drift heuristic."""


class BadBounds(WallachError):
    """Invalid rectangle for portrait sampling."""


class BoundaryTriple(WallachError):
    """SO-triple with l = m = 1 maps to the cube boundary; needs explicit opt-in."""


class ParseError(WallachError):
    """Command-line argument could not be parsed."""
