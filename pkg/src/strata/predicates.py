"""Exact-decision geometric primitives.

The two sign predicates (`orient`, `in_circle`) are evaluated with a
floating-point filter: the double-precision result is accepted whenever it
clears a static forward-error bound, otherwise the determinant is recomputed
in exact rational arithmetic.  Every reported sign is therefore correct as if
computed in infinite precision.  Continuous outputs (circle centers, radii)
are ordinary floating point; no combinatorial decision ever reads them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple

from .errors import DegenerateTripleError

__all__ = [
    "Sign",
    "Point",
    "Circle",
    "orient",
    "in_circle",
    "circumcircle",
    "point_vs_circle",
]

# Forward-error coefficients for the filtered determinants (machine epsilon
# here is 2^-53, the unit roundoff of IEEE double).
_EPS = 2.0 ** -53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_INCIRCLE_BOUND = (10.0 + 96.0 * _EPS) * _EPS


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    """A circle, optionally tagged with the indices of the triangle that defined it."""

    center: Point
    radius: float
    defining_triple: Optional[Tuple[int, int, int]] = None

    def __post_init__(self):
        if self.radius < 0.0:
            raise ValueError(f"negative radius {self.radius}")


def _sign(value: float) -> Sign:
    if value > 0.0:
        return Sign.POSITIVE
    if value < 0.0:
        return Sign.NEGATIVE
    return Sign.ZERO


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay = Fraction(ax), Fraction(ay)
    bx, by = Fraction(bx), Fraction(by)
    cx, cy = Fraction(cx), Fraction(cy)
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def _orient_raw(ax, ay, bx, by, cx, cy) -> int:
    """Sign (-1/0/1) of the ccw turn a->b->c on raw coordinates."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
        detsum = -detleft - detright
    else:
        # One factor is an exact zero product; det reduces to -detright,
        # whose floating-point sign is already exact.
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
    errbound = _ORIENT_BOUND * detsum
    if det > errbound or -det > errbound:
        return 1 if det > 0.0 else -1
    return _orient_exact(ax, ay, bx, by, cx, cy)


def _in_circle_exact(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    ax, ay = Fraction(ax), Fraction(ay)
    bx, by = Fraction(bx), Fraction(by)
    cx, cy = Fraction(cx), Fraction(cy)
    dx, dy = Fraction(dx), Fraction(dy)
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def _in_circle_raw(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of the lifted determinant; positive iff d is strictly inside the
    circumcircle of the ccw triangle (a, b, c).  Assumes the ccw precondition."""
    adx = ax - dx
    bdx = bx - dx
    cdx = cx - dx
    ady = ay - dy
    bdy = by - dy
    cdy = cy - dy

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = _INCIRCLE_BOUND * permanent
    if det > errbound or -det > errbound:
        return 1 if det > 0.0 else -1
    return _in_circle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> Sign:
    """Exact orientation of the triple (a, b, c).

    Positive iff c lies strictly to the left of the directed line a -> b,
    Zero iff the three points are collinear.
    """
    return Sign(_orient_raw(a[0], a[1], b[0], b[1], c[0], c[1]))


def in_circle(a, b, c, d) -> Sign:
    """Exact circumcircle test.

    Positive iff d lies strictly inside the circumcircle of the
    counterclockwise triangle (a, b, c); Zero iff the four points are
    cocircular.  Raises ValueError when (a, b, c) is not counterclockwise.
    """
    if _orient_raw(a[0], a[1], b[0], b[1], c[0], c[1]) <= 0:
        raise ValueError("in_circle requires a counterclockwise triangle (a, b, c)")
    return Sign(_in_circle_raw(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]))


def _circumcenter_raw(ax, ay, bx, by, cx, cy):
    """Circumcenter coordinates, or None for an exactly collinear triple."""
    if _orient_raw(ax, ay, bx, by, cx, cy) == 0:
        return None
    dx1, dy1 = bx - ax, by - ay
    dx2, dy2 = cx - ax, cy - ay
    n1 = dx1 * dx1 + dy1 * dy1
    n2 = dx2 * dx2 + dy2 * dy2
    d = 2.0 * (dx1 * dy2 - dy1 * dx2)
    ux = ax + (dy2 * n1 - dy1 * n2) / d
    uy = ay + (dx1 * n2 - dx2 * n1) / d
    return ux, uy


def circumcircle(a, b, c) -> Circle:
    """Circle through three non-collinear points.

    The center is equidistant from the inputs up to roundoff; the radius is
    that common distance.  Raises DegenerateTripleError on collinear input.
    """
    center = _circumcenter_raw(a[0], a[1], b[0], b[1], c[0], c[1])
    if center is None:
        raise DegenerateTripleError(f"collinear points {tuple(a)}, {tuple(b)}, {tuple(c)}")
    ux, uy = center
    radius = math.hypot(a[0] - ux, a[1] - uy)
    return Circle(Point(ux, uy), radius)


def point_vs_circle(c: Circle, p, tolerance: Optional[float] = None) -> Sign:
    """Classify p against the circle boundary within a tolerance band.

    Positive strictly inside, Zero within +-tolerance of the boundary,
    Negative outside.  The default tolerance is 1e-9 * (1 + radius) so that
    the band scales with the circle.
    """
    if tolerance is None:
        tolerance = 1e-9 * (1.0 + c.radius)
    elif tolerance < 0.0:
        raise ValueError("tolerance must be nonnegative")
    dist = math.hypot(p[0] - c.center.x, p[1] - c.center.y)
    if dist < c.radius - tolerance:
        return Sign.POSITIVE
    if dist <= c.radius + tolerance:
        return Sign.ZERO
    return Sign.NEGATIVE
