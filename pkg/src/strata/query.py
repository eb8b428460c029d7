"""Depth of a query point, and how one insertion perturbs existing labels.

The depth of a point p relative to the set S is its depth inside the
triangulation of S + {p}, so a query is one incremental insertion followed by
a relabeling of the extended set.  ``query_depth`` accepts a prebuilt
Triangulation so repeated queries against the same set do not pay for
reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from .depth import delaunay_depths
from .errors import DegenerateInputError
from .triangulation import PointSet, Triangulation, delaunay, insert_point

__all__ = ["DepthDelta", "query_depth", "depth_change_report"]


@dataclass(frozen=True)
class DepthDelta:
    """Old/new depth per original vertex after one insertion."""

    point_deltas: List[Tuple[int, int]]
    set_depth_before: int
    set_depth_after: int

    @property
    def max_abs_change(self) -> int:
        return max((abs(b - a) for a, b in self.point_deltas), default=0)


def _triangulation_of(s: Union[PointSet, Triangulation]):
    if isinstance(s, Triangulation):
        return s.point_set, s
    return s, None


def query_depth(s: Union[PointSet, Triangulation], p: Sequence[float]) -> int:
    """Depth of p relative to the point set (depth of p in the set plus p).

    A query coinciding with a data point reports that point's depth.  When
    the extended set is entirely collinear every point sits on the hull and
    the depth is 1.
    """
    ps, t = _triangulation_of(s)
    existing = ps.index_of(p)
    if existing is not None:
        try:
            t = t if t is not None else delaunay(ps)
        except DegenerateInputError:
            return 1
        return delaunay_depths(t)[existing]
    try:
        if t is None:
            t = delaunay(ps)
        tp = insert_point(t, p)
    except DegenerateInputError:
        try:
            tp = delaunay(ps.with_point(p))
        except DegenerateInputError:
            return 1
    return delaunay_depths(tp)[len(ps)]


def depth_change_report(s: Union[PointSet, Triangulation], p: Sequence[float]) -> DepthDelta:
    """Per-vertex (old, new) depths and the set depth before/after inserting p."""
    ps, t = _triangulation_of(s)
    n = len(ps)

    def _labels_or_flat(tri_or_ps):
        if isinstance(tri_or_ps, Triangulation):
            return delaunay_depths(tri_or_ps)
        try:
            return delaunay_depths(delaunay(tri_or_ps))
        except DegenerateInputError:
            return None

    if t is None:
        try:
            t = delaunay(ps)
        except DegenerateInputError:
            t = None
    old = delaunay_depths(t).depth if t is not None else np.ones(n, dtype=np.int64)
    before = int(old.max())

    if ps.index_of(p) is not None:
        deltas = [(int(v), int(v)) for v in old]
        return DepthDelta(deltas, before, before)

    if t is not None:
        tp = insert_point(t, p)
    else:
        try:
            tp = delaunay(ps.with_point(p))
        except DegenerateInputError:
            deltas = [(int(v), int(v)) for v in old]
            return DepthDelta(deltas, before, before)
    new = delaunay_depths(tp).depth
    deltas = [(int(old[i]), int(new[i])) for i in range(n)]
    return DepthDelta(deltas, before, int(new.max()))
