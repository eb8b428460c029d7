"""Exception types shared across the package."""


class StrataError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(StrataError, ValueError):
    """Input is too degenerate for the requested operation (e.g. all points collinear)."""


class DegenerateTripleError(DegenerateInputError):
    """Three collinear points do not define a circle."""


class DuplicatePointError(StrataError, ValueError):
    """A point coincides exactly with one already present."""


class CocircularDegeneracyError(StrataError, ValueError):
    """The brute-force triangulation oracle is undefined: four points lie on an empty circle."""


class BoundaryAmbiguityError(StrataError, ValueError):
    """A query point lies within tolerance of a level boundary.

    Carries the two candidate levels the point could belong to.
    """

    def __init__(self, low: int, high: int):
        super().__init__(f"point lies on the boundary between levels {low} and {high}")
        self.levels = (low, high)
