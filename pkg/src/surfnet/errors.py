"""Exception hierarchy shared by all modules."""


class SurfnetError(Exception):
    """Base class; the CLI reports ``type(exc).__name__`` on exit code 4."""


# polyarith
class ZeroDenominator(SurfnetError, ZeroDivisionError):
    pass


class NotExpandable(SurfnetError):
    """Denominator vanishes at the origin (or is not a unit there)."""


class MissingSign(SurfnetError, KeyError):
    pass


# surface_geom
class GeometryError(SurfnetError):
    pass


class DegenerateTurn(GeometryError):
    """A turning angle of a closed polyline is too close to +-pi."""


class NonNormalCurve(GeometryError):
    """A tangential or triple self-intersection was found."""


# network / boundary measurement
class InvalidNetwork(SurfnetError):
    pass


class SizeMismatch(SurfnetError, ValueError):
    pass


class NotPerfectlyOriented(SurfnetError):
    pass


class NoBoundarySource(SurfnetError):
    pass


class Inconsistent(SurfnetError):
    """The mod-2 sign system has no solution."""


# gauge
class UnknownVertex(SurfnetError, KeyError):
    pass


class Stuck(SurfnetError):
    """Frontier of the gauge search emptied before every vertex was closed."""


class NotEquivalent(SurfnetError):
    pass


class HypothesisViolated(SurfnetError):
    """Some vertex lies on no boundary-to-boundary path."""


# netfile
class ParseError(SurfnetError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
