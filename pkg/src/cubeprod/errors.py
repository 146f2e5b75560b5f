"""Exception hierarchy shared by all kernels."""


class CubeProdError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CubeProdError, ValueError):
    pass


class PoleError(CubeProdError, ValueError):
    """Argument too close to a pole of a Gamma factor."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class NoConvergence(CubeProdError, ArithmeticError):
    """An iterative procedure hit its limit.

    ``partial`` holds the best available result (a value, a QuadResult or a
    SeriesResult depending on the raiser) so callers can still report it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NonFinite(CubeProdError, ArithmeticError):
    pass


class ZeroFactor(CubeProdError, ArithmeticError):
    def __init__(self, k):
        super().__init__(f"factor k={k} of the product vanishes")
        self.k = k


class NearZeroOnContour(CubeProdError, ArithmeticError):
    def __init__(self, point):
        super().__init__(f"function vanishes (numerically) on the contour near {point}")
        self.point = point


class AmbiguousWinding(CubeProdError, ArithmeticError):
    def __init__(self, raw):
        super().__init__(f"accumulated winding {raw:.6f} is not close to an integer")
        self.raw = raw


class SymmetryViolation(CubeProdError, AssertionError):
    def __init__(self, root, message):
        super().__init__(f"root {root}: {message}")
        self.root = root


class UnknownIdentity(CubeProdError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
