"""Brute-force references and extremal point-set generators.

Everything here is meant to be obviously correct rather than fast: the naive
triangulation realizes the empty-circumcircle definition by testing every
triple against every point, and the level field labels a whole grid by
individual insertion queries.  The three generators build the configurations
that achieve the structural extremes (an axis cross whose query depth counts
distinct values, nested triangles whose depth collapses on one insertion, and
a chain-with-satellites set maximizing the number of layer components).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import CocircularDegeneracyError, DegenerateInputError
from .predicates import Point, _in_circle_raw, _orient_raw
from .query import query_depth
from .triangulation import PointSet, Triangulation, delaunay

__all__ = [
    "NaiveTriangulation",
    "naive_delaunay",
    "LevelField",
    "sampled_level_field",
    "element_uniqueness_gadget",
    "nested_triangle_gadget",
    "component_extremal_gadget",
]

_EPS = 2.0 ** -53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_INCIRCLE_BOUND = (10.0 + 96.0 * _EPS) * _EPS


@dataclass(frozen=True)
class NaiveTriangulation:
    """Triangle set produced by the definitional oracle."""

    triangles: np.ndarray  # (m, 3) ccw, canonical order
    edges: np.ndarray      # (e, 2) with u < v, sorted

    @property
    def boundary_vertices(self) -> List[int]:
        """Vertices of edges that belong to exactly one triangle."""
        tris = self.triangles
        e = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
        e.sort(axis=1)
        uniq, counts = np.unique(e, axis=0, return_counts=True)
        return sorted(set(uniq[counts == 1].ravel().tolist()))


def naive_delaunay(s: PointSet) -> NaiveTriangulation:
    """All triples whose circumcircle strictly contains no other point.

    Undefined (raises CocircularDegeneracyError) when a fourth point lies
    exactly on such an empty circumcircle, since either diagonal choice would
    then be valid.
    """
    coords = s.coords
    n = coords.shape[0]
    if n < 3:
        raise DegenerateInputError(f"need at least 3 points, got {n}")
    x = coords[:, 0]
    y = coords[:, 1]

    triples = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    ta, tb, tc = triples[:, 0], triples[:, 1], triples[:, 2]
    detleft = (x[ta] - x[tc]) * (y[tb] - y[tc])
    detright = (y[ta] - y[tc]) * (x[tb] - x[tc])
    det = detleft - detright
    bound = _ORIENT_BOUND * (np.abs(detleft) + np.abs(detright))
    unsure = np.abs(det) <= bound
    orient = np.sign(det).astype(np.int64)
    for i in np.nonzero(unsure)[0]:
        a, b, c = triples[i]
        orient[i] = _orient_raw(x[a], y[a], x[b], y[b], x[c], y[c])
    keep = orient != 0
    if not np.any(keep):
        raise DegenerateInputError("all points are collinear; the triangulation does not exist")
    triples = triples[keep]
    flip = orient[keep] < 0
    triples[flip] = triples[flip][:, [0, 2, 1]]

    kept_rows: List[np.ndarray] = []
    degenerate = False
    for lo in range(0, triples.shape[0], 4096):
        block = triples[lo:lo + 4096]
        a, b, c = block[:, 0], block[:, 1], block[:, 2]
        adx = x[a, None] - x[None, :]
        ady = y[a, None] - y[None, :]
        bdx = x[b, None] - x[None, :]
        bdy = y[b, None] - y[None, :]
        cdx = x[c, None] - x[None, :]
        cdy = y[c, None] - y[None, :]
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
            (np.abs(bdxcdy) + np.abs(cdxbdy)) * alift
            + (np.abs(cdxady) + np.abs(adxcdy)) * blift
            + (np.abs(adxbdy) + np.abs(bdxady)) * clift
        )
        bound = _INCIRCLE_BOUND * permanent
        inside = det > bound
        zero = np.zeros_like(inside)
        unsure = np.abs(det) <= bound
        cols = np.arange(n)
        member = (a[:, None] == cols) | (b[:, None] == cols) | (c[:, None] == cols)
        unsure &= ~member
        for ti, di in zip(*np.nonzero(unsure)):
            sgn = _in_circle_raw(
                x[a[ti]], y[a[ti]], x[b[ti]], y[b[ti]], x[c[ti]], y[c[ti]], x[di], y[di]
            )
            inside[ti, di] = sgn > 0
            zero[ti, di] = sgn == 0
        inside &= ~member
        empty = ~inside.any(axis=1)
        if np.any(zero[empty].any(axis=1)):
            degenerate = True
            break
        kept_rows.append(block[empty])
    if degenerate:
        raise CocircularDegeneracyError(
            "four cocircular points on an empty circle: the oracle triangulation is ambiguous"
        )
    tris = np.concatenate(kept_rows) if kept_rows else np.empty((0, 3), dtype=np.int64)
    if tris.shape[0]:
        roll = np.argmin(tris, axis=1)
        colsel = (np.arange(3)[None, :] + roll[:, None]) % 3
        tris = np.take_along_axis(tris, colsel, axis=1)
        tris = tris[np.lexsort((tris[:, 2], tris[:, 1], tris[:, 0]))]
    e = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    e.sort(axis=1)
    edges = np.unique(e, axis=0)
    return NaiveTriangulation(triangles=tris, edges=edges)


@dataclass(frozen=True)
class LevelField:
    """Grid of levels sampled by insertion queries."""

    xs: np.ndarray
    ys: np.ndarray
    levels: np.ndarray  # shape (len(ys), len(xs))


def sampled_level_field(
    s: PointSet,
    shape: Tuple[int, int] = (50, 50),
    margin: float = 0.1,
) -> LevelField:
    """Label every cell of a bounding-box grid by its insertion depth."""
    nx, ny = shape
    coords = s.coords
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    lo = lo - margin * span
    hi = hi + margin * span
    xs = np.linspace(lo[0], hi[0], nx)
    ys = np.linspace(lo[1], hi[1], ny)
    try:
        base: Union[PointSet, Triangulation] = delaunay(s)
    except DegenerateInputError:
        base = s
    levels = np.empty((ny, nx), dtype=np.int64)
    for j, yv in enumerate(ys.tolist()):
        for i, xv in enumerate(xs.tolist()):
            levels[j, i] = query_depth(base, (xv, yv))
    return LevelField(xs=xs, ys=ys, levels=levels)


def element_uniqueness_gadget(a: Sequence[float]) -> PointSet:
    """Axis cross with four points per distinct value of the input multiset.

    The intended query point is the origin: its depth is the number of
    distinct values plus one, which is what makes the construction a
    uniqueness detector.
    """
    values = sorted(set(float(v) for v in a))
    if not values:
        raise ValueError("need at least one value")
    if values[0] <= 0.0:
        raise ValueError(f"values must be positive, got {values[0]}")
    pts = []
    for v in values:
        pts.extend([(v, 0.0), (-v, 0.0), (0.0, v), (0.0, -v)])
    return PointSet(pts)


def nested_triangle_gadget(k: int) -> Tuple[PointSet, Point]:
    """Two homothetic triangles joined by three evenly filled segments.

    Returns 3k points of set depth exactly k, together with the insertion
    point that sits outside the hull but inside the inner circumcircle; for
    k >= 4 inserting it collapses the set depth to 3.
    """
    if k < 2:
        raise ValueError(f"need at least 2 points per segment, got {k}")
    outer_r = 1.0
    inner_r = 0.62  # inner circumcircle must cross every outer edge twice (> 1/2)
    angles = (math.pi / 2.0, math.pi / 2.0 + 2.0 * math.pi / 3.0, math.pi / 2.0 + 4.0 * math.pi / 3.0)
    pts = []
    for t in range(k):
        rho = outer_r - (outer_r - inner_r) * t / (k - 1)
        for ang in angles:
            pts.append((rho * math.cos(ang), rho * math.sin(ang)))
    # midway between the hull edge opposite the third ray and the inner circle
    gap_dir = math.pi / 2.0 + math.pi / 3.0
    dist = (0.5 * outer_r + inner_r) / 2.0
    p = Point(dist * math.cos(gap_dir), dist * math.sin(gap_dir))
    return PointSet(pts), p


def component_extremal_gadget(k: int) -> PointSet:
    """2k + 2 points whose layers split into k + 1 connected components.

    One apex above a convex chain of k + 1 points; each of the k satellites
    floats just above one chain edge, deep enough that its circumcircle with
    the edge endpoints swallows the apex, which isolates it at depth 2.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    xs = [-1.0 + 2.0 * i / k for i in range(k + 1)]
    # the chain must be shallow: a satellite's circumcircle with its edge
    # endpoints has radius ~ dx^2 / (8 * height), and that circle has to
    # reach the apex or the satellites would join into one component
    chain = [(xv, 0.1 * xv * xv) for xv in xs]
    pts = [(0.0, 2.0)] + chain
    dx = 2.0 / k
    for j in range(k):
        x0, y0 = chain[j]
        x1, y1 = chain[j + 1]
        pts.append(((x0 + x1) / 2.0, (y0 + y1) / 2.0 + 0.002 * dx * dx))
    return PointSet(pts)
