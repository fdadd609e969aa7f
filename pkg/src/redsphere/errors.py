"""Exception types shared by the whole package.

Everything derives from RedsphereError so callers can catch the library's
failures in one clause.  DomainError doubles as a ValueError because it
signals an argument outside a function's mathematical domain.
"""


class RedsphereError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RedsphereError, ValueError):
    """Argument outside the open domain of a scalar formula."""


class DegeneratePoint(RedsphereError):
    """A vector too short to normalize onto the unit sphere."""


class DegenerateArc(RedsphereError):
    """Arc endpoints coincident or antipodal; the shorter arc is undefined."""


class DegenerateProjection(RedsphereError):
    """Point is (anti)parallel to the circle pole; projection undefined."""


class DegenerateAngle(RedsphereError):
    """Angle vertex coincident or antipodal with a ray endpoint."""


class NoIntersection(RedsphereError):
    """Two arcs whose great circles meet outside both arcs."""


class CoplanarArcs(RedsphereError):
    """Two arcs on the same great circle; no transversal intersection."""


class InconsistentData(RedsphereError):
    """No right spherical triangle satisfies the given constraints."""


class NotConvex(RedsphereError):
    """Vertex list is not a strictly convex counterclockwise polygon."""


class NotInHemisphere(RedsphereError):
    """No open-hemisphere witness found for the vertex set."""


class NoEnclosingCap(RedsphereError):
    """No spherical cap of radius <= pi/2 contains every vertex."""


class NotConverged(RedsphereError):
    """A sample did not reach the residual tolerance."""


class ConstraintViolation(RedsphereError):
    """A converged sample violates a side-interior constraint."""


class PolygonDocumentError(RedsphereError):
    """Polygon JSON document malformed or vertices too far from unit norm."""
