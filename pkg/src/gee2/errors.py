"""Exception hierarchy.

Every domain error derives from :class:`Gee2Error` so callers (and the CLI)
can catch one type and report ``type(err).__name__`` as the error code.
"""


class Gee2Error(Exception):
    """Base class for all domain errors."""


# complex construction and queries
class EmptyInput(Gee2Error):
    pass


class NonPure(Gee2Error):
    pass


class InvalidSimplex(Gee2Error):
    pass


class DimensionOutOfRange(Gee2Error):
    pass


class FaceNotPresent(Gee2Error):
    pass


class UnknownVertex(Gee2Error):
    pass


class VertexOverlap(Gee2Error):
    pass


class ResourceBound(Gee2Error):
    pass


class NotNormal(Gee2Error):
    pass


class TooFewVertices(Gee2Error):
    pass


class MissingCoordinate(Gee2Error):
    pass


# moves
class MoveError(Gee2Error):
    """A retriangulation move was requested where it is not legal."""


class NotDimension3(MoveError):
    pass


class LinkNotQuadrilateral(MoveError):
    pass


class EdgeNotMissing(MoveError):
    pass


class LinkNotBoundaryOfSimplex(MoveError):
    pass


class TauPresent(MoveError):
    pass


class RidgeNotInterior(MoveError):
    pass


class EdgePresent(MoveError):
    pass


class PatternMismatch(MoveError):
    pass


class LinkConditionFailed(MoveError):
    pass


class MinimumVertices(MoveError):
    pass


class NotSeparating(MoveError):
    pass


class DiscDecompositionFailed(MoveError):
    pass


class NotABall(MoveError):
    pass


class ApexCollision(MoveError):
    pass


class LinkNotStacked(MoveError):
    pass


class InteriorFacePresent(MoveError):
    pass


class VertexMissing(MoveError):
    pass


class FreshVertexCollision(MoveError):
    pass


class TauNotMissing(MoveError):
    pass


class LinkNotSphere(MoveError):
    pass


class NotAFacet(MoveError):
    pass


class DimensionMismatch(MoveError):
    pass


class IdentificationCollision(MoveError):
    pass


# classification
class HypothesisViolation(Gee2Error):
    pass


class SearchExhausted(Gee2Error):
    def __init__(self, message: str, trace: list[str] | None = None):
        super().__init__(message)
        self.trace = list(trace or [])
