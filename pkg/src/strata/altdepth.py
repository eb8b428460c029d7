"""Classical depth notions used for comparison: hull peeling and halfplane depth.

Peeling depth strips every point on the current hull boundary per round (a
point interior to a hull edge is on the boundary and peels with it), so the
labels are the round numbers.  Halfplane depth counts, over all lines through
the query point, the smallest number of data points strictly on one side;
points exactly on a line count for neither side.  The sweep sorts the
directions toward the data points and slides a half-circle window, with all
side decisions made by the exact orientation predicate.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .predicates import Point, _orient_raw
from .triangulation import PointSet

__all__ = ["ConvexDepthLabels", "TukeyDepthValue", "convex_depths", "tukey_depth"]


@dataclass(frozen=True)
class ConvexDepthLabels:
    """Peeling-round labels and the hull polygon removed in each round."""

    depth: np.ndarray
    layer_polygons: Tuple[Tuple[int, ...], ...]

    @property
    def set_depth(self) -> int:
        return int(self.depth.max())


def _subset_hull(coords: np.ndarray, idx: List[int]) -> List[int]:
    """Strict hull cycle of a subset of points, as global indices."""
    if len(idx) == 1:
        return list(idx)
    pts = coords[idx]
    order = np.lexsort((pts[:, 1], pts[:, 0])).tolist()
    plist = pts.tolist()

    def chain(seq):
        out = []
        for i in seq:
            xi, yi = plist[i]
            while len(out) >= 2:
                a, b = out[-2], out[-1]
                if _orient_raw(plist[a][0], plist[a][1], plist[b][0], plist[b][1], xi, yi) <= 0:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    hull_local = lower[:-1] + upper[:-1]
    if len(hull_local) == 2 and hull_local[0] == hull_local[1]:
        hull_local = hull_local[:1]
    return [idx[i] for i in hull_local]


def convex_depths(s: PointSet) -> ConvexDepthLabels:
    """Iterated hull peeling; every point on the current hull boundary gets
    the round number as its depth."""
    coords = s.coords
    n = coords.shape[0]
    depth = np.zeros(n, dtype=np.int64)
    remaining = list(range(n))
    polygons = []
    round_no = 0
    while remaining:
        round_no += 1
        hull = _subset_hull(coords, remaining)
        polygons.append(tuple(int(v) for v in hull))
        hull_xy = coords[hull]
        rem_xy = coords[remaining]
        on_boundary = np.zeros(len(remaining), dtype=bool)
        h = len(hull)
        for e in range(h if h > 2 else h - 1 if h == 2 else 0):
            ax, ay = hull_xy[e]
            bx, by = hull_xy[(e + 1) % h]
            crossv = (bx - ax) * (rem_xy[:, 1] - ay) - (by - ay) * (rem_xy[:, 0] - ax)
            within = (
                (rem_xy[:, 0] >= min(ax, bx)) & (rem_xy[:, 0] <= max(ax, bx))
                & (rem_xy[:, 1] >= min(ay, by)) & (rem_xy[:, 1] <= max(ay, by))
            )
            on_boundary |= (crossv == 0.0) & within
        for v in hull:
            on_boundary[remaining.index(v)] = True
        next_remaining = []
        for flag, v in zip(on_boundary.tolist(), remaining):
            if flag:
                depth[v] = round_no
            else:
                next_remaining.append(v)
        remaining = next_remaining
    return ConvexDepthLabels(depth=depth, layer_polygons=tuple(polygons))


@dataclass(frozen=True)
class TukeyDepthValue:
    depth: int
    witness_direction: Point


def _dir_compare(d1, d2) -> int:
    """Angular order over [0, 2pi), exact: by half-plane then by cross sign."""
    h1 = 0 if (d1[1] > 0.0 or (d1[1] == 0.0 and d1[0] > 0.0)) else 1
    h2 = 0 if (d2[1] > 0.0 or (d2[1] == 0.0 and d2[0] > 0.0)) else 1
    if h1 != h2:
        return -1 if h1 < h2 else 1
    s = _orient_raw(0.0, 0.0, d1[0], d1[1], d2[0], d2[1])
    return -s


def tukey_depth(s: PointSet, p: Sequence[float]) -> TukeyDepthValue:
    """Halfplane depth of p with a direction witnessing a minimizing line.

    One plus the minimum, over all lines through p, of the points strictly on
    one side; the witness is the unit normal of a minimizing halfplane.
    """
    px, py = float(p[0]), float(p[1])
    dirs = [(x - px, y - py) for x, y in s.coords.tolist() if (x, y) != (px, py)]
    if not dirs:
        return TukeyDepthValue(depth=1, witness_direction=Point(1.0, 0.0))
    dirs.sort(key=functools.cmp_to_key(_dir_compare))

    rays: List[Tuple[float, float]] = []
    counts: List[int] = []
    for v in dirs:
        if rays and _dir_compare(rays[-1], v) == 0:
            counts[-1] += 1
        else:
            rays.append(v)
            counts.append(1)
    k = len(rays)
    total = len(dirs)

    def ccw_of(i: int, j: int) -> int:
        a = rays[i]
        b = rays[j % k]
        return _orient_raw(0.0, 0.0, a[0], a[1], b[0], b[1])

    best = total + 1
    best_i = 0
    best_left = True
    j = 1
    left_sums = [0] * k
    pref = [0]
    for c in counts + counts:
        pref.append(pref[-1] + c)
    for i in range(k):
        if j < i + 1:
            j = i + 1
        while j < i + k and ccw_of(i, j) > 0:
            j += 1
        left = pref[j] - pref[i + 1]
        on_line = counts[i]
        if j < i + k and ccw_of(i, j) == 0:
            on_line += counts[j % k]  # the exactly opposite ray
        right = total - left - on_line
        left_sums[i] = left
        for side_count, is_left in ((left, True), (right, False)):
            if side_count < best:
                best = side_count
                best_i = i
                best_left = is_left
    dx, dy = rays[best_i]
    norm = math.hypot(dx, dy)
    if best_left:
        w = Point(-dy / norm, dx / norm)
    else:
        w = Point(dy / norm, -dx / norm)
    return TukeyDepthValue(depth=1 + best, witness_direction=w)
