"""Level boundaries as closed circular-arc curves.

Level 1 is bounded by the hull polygon.  For j >= 2 the boundary between
level j and level j+1 consists of arcs of the circumcircles of triangles
whose vertex depths are {j, j, j-1}; the curve is the inner boundary (the
hole) of the union of those disks.  The union is built per circle: collect
the crossing angles with every other disk, keep the maximal arcs whose
midpoints are covered by no other disk, stitch arcs at shared endpoints, and
keep the stitched loops of negative signed area, which are exactly the loops
that wind clockwise around a bounded complement face.

Arcs are always stored counterclockwise on their own circle, so a hole curve
keeps the enclosed (deeper) region on its right.  All of this is rendered
geometry: tolerances are relative to the data scale and no combinatorial
decision feeds back into the depth labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .depth import DepthLabels
from .errors import BoundaryAmbiguityError
from .predicates import Circle, Point
from .triangulation import Triangulation

__all__ = [
    "Arc",
    "DepthContour",
    "LevelSet",
    "boundary_circles",
    "union_hole_boundary",
    "depth_contours",
    "classify",
]

_TWO_PI = 2.0 * math.pi
SEGMENTS_PER_ARC = 64  # density of the polygonal approximation for centroids


@dataclass(frozen=True)
class Arc:
    """Piece of a circle from start_angle to end_angle, counterclockwise."""

    circle: Circle
    start_angle: float
    end_angle: float
    ccw: bool = True

    @property
    def span(self) -> float:
        return (self.end_angle - self.start_angle) % _TWO_PI

    def point_at(self, angle: float) -> Point:
        c = self.circle
        return Point(c.center.x + c.radius * math.cos(angle), c.center.y + c.radius * math.sin(angle))

    @property
    def start(self) -> Point:
        return self.point_at(self.start_angle)

    @property
    def end(self) -> Point:
        return self.point_at(self.end_angle)


@dataclass(frozen=True)
class DepthContour:
    """Boundary between one level and the next.

    Level 1 carries the hull polygon (vertex indices plus coordinates);
    deeper levels carry closed arc curves.
    """

    level: int
    curves: Tuple[Tuple[Arc, ...], ...] = ()
    polygon_indices: Tuple[int, ...] = ()
    polygon: Optional[np.ndarray] = None


@dataclass(frozen=True)
class LevelSet:
    """All contours of a point set, nested outside-in, plus the deep medians."""

    contours: Tuple[DepthContour, ...]
    depth_of_set: int
    medians: Tuple[Point, ...]
    _scale: float = 1.0

    @property
    def level_count(self) -> int:
        """Number of nonempty levels (the deepest contour bounds the last one)."""
        return self.contours[-1].level + 1


def _tri_circumcircles(coords: np.ndarray, tris: np.ndarray):
    ax, ay = coords[tris[:, 0], 0], coords[tris[:, 0], 1]
    bx, by = coords[tris[:, 1], 0], coords[tris[:, 1], 1]
    cx, cy = coords[tris[:, 2], 0], coords[tris[:, 2], 1]
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    r = np.hypot(ax - ux, ay - uy)
    return ux, uy, r


def boundary_circles(t: Triangulation, d: DepthLabels, j: int) -> List[Circle]:
    """Circumcircles of the triangles whose vertex depth multiset is {j, j, j-1}."""
    if j < 2 or j > d.set_depth:
        raise ValueError(f"level index {j} outside 2..{d.set_depth}")
    tris = t.triangles
    dep = d.depth[tris]
    count_j = (dep == j).sum(axis=1)
    count_jm1 = (dep == j - 1).sum(axis=1)
    sel = (count_j == 2) & (count_jm1 == 1)
    chosen = tris[sel]
    if chosen.shape[0] == 0:
        return []
    ux, uy, r = _tri_circumcircles(t.point_set.coords, chosen)
    return [
        Circle(Point(float(x), float(y)), float(rr), defining_triple=(int(a), int(b), int(c)))
        for x, y, rr, (a, b, c) in zip(ux, uy, r, chosen.tolist())
    ]


def _circle_arrays(disks: Sequence[Circle]):
    cx = np.array([c.center.x for c in disks])
    cy = np.array([c.center.y for c in disks])
    r = np.array([c.radius for c in disks])
    return cx, cy, r


def _dedupe_and_prune(disks: Sequence[Circle], eps: float) -> List[Circle]:
    """Drop duplicate circles and disks entirely inside another disk."""
    cx, cy, r = _circle_arrays(disks)
    order = np.lexsort((r, cy, cx))
    keep_idx: List[int] = []
    for i in order.tolist():
        dup = False
        for j in keep_idx:
            if abs(cx[i] - cx[j]) <= eps and abs(cy[i] - cy[j]) <= eps and abs(r[i] - r[j]) <= eps:
                dup = True
                break
        if not dup:
            keep_idx.append(i)
    disks = [disks[i] for i in sorted(keep_idx)]
    cx, cy, r = _circle_arrays(disks)
    m = len(disks)
    if m <= 1:
        return list(disks)
    dist = np.hypot(cx[:, None] - cx[None, :], cy[:, None] - cy[None, :])
    contained = (dist + r[:, None] <= r[None, :] + eps) & ~np.eye(m, dtype=bool)
    keep = ~contained.any(axis=1)
    return [disks[i] for i in range(m) if keep[i]]


def union_hole_boundary(disks: Sequence[Circle]) -> List[List[Arc]]:
    """Boundaries of the bounded faces of the complement of the disk union.

    Each hole comes back as a closed sequence of counterclockwise arcs; the
    list is empty when the union has no hole.
    """
    if not disks:
        raise ValueError("need at least one disk")
    scale = max(
        1.0,
        max(abs(c.center.x) + c.radius for c in disks),
        max(abs(c.center.y) + c.radius for c in disks),
    )
    eps = 1e-12 * scale
    disks = _dedupe_and_prune(disks, eps)
    m = len(disks)
    cx, cy, r = _circle_arrays(disks)

    # proper crossings between circle pairs
    dx = cx[None, :] - cx[:, None]
    dy = cy[None, :] - cy[:, None]
    dist = np.hypot(dx, dy)
    cross = (dist < r[:, None] + r[None, :] - eps) & (dist > np.abs(r[:, None] - r[None, :]) + eps)
    np.fill_diagonal(cross, False)

    events: List[List[float]] = [[] for _ in range(m)]
    for i in range(m):
        for k in np.nonzero(cross[i])[0].tolist():
            if k < i:
                continue
            d = dist[i, k]
            a = (d * d + r[i] * r[i] - r[k] * r[k]) / (2.0 * d)
            h2 = r[i] * r[i] - a * a
            h = math.sqrt(h2) if h2 > 0.0 else 0.0
            ux, uy = dx[i, k] / d, dy[i, k] / d
            bx, by = cx[i] + a * ux, cy[i] + a * uy
            for sgn in (1.0, -1.0):
                px, py = bx + sgn * h * -uy, by + sgn * h * ux
                events[i].append(math.atan2(py - cy[i], px - cx[i]) % _TWO_PI)
                events[k].append(math.atan2(py - cy[k], px - cx[k]) % _TWO_PI)

    kept: List[Tuple[int, float, float]] = []  # (disk index, start, end)
    for i in range(m):
        partners = np.nonzero(cross[i])[0]
        if len(events[i]) == 0:
            # an isolated circle bounds its own blob; it can never be a hole
            # but must still close the curve set when it is the whole union
            kept.append((i, 0.0, math.pi))
            kept.append((i, math.pi, 0.0))
            continue
        angs = sorted(set(events[i]))
        for idx, a0 in enumerate(angs):
            a1 = angs[(idx + 1) % len(angs)]
            span = (a1 - a0) % _TWO_PI
            if span <= 0.0:
                span = _TWO_PI
            mid = (a0 + span / 2.0) % _TWO_PI
            px = cx[i] + r[i] * math.cos(mid)
            py = cy[i] + r[i] * math.sin(mid)
            covered = False
            for k in partners.tolist():
                if math.hypot(px - cx[k], py - cy[k]) < r[k] - eps:
                    covered = True
                    break
            if not covered:
                kept.append((i, a0, a1))

    if not kept:
        return []

    # stitch arcs into closed loops at shared endpoints
    key_scale = 1e-9 * scale

    def junction_key(x: float, y: float) -> Tuple[int, int]:
        return (round(x / key_scale), round(y / key_scale))

    starts = {}
    arc_pts = []
    for idx, (i, a0, a1) in enumerate(kept):
        sx, sy = cx[i] + r[i] * math.cos(a0), cy[i] + r[i] * math.sin(a0)
        ex, ey = cx[i] + r[i] * math.cos(a1), cy[i] + r[i] * math.sin(a1)
        arc_pts.append((sx, sy, ex, ey))
        starts.setdefault(junction_key(sx, sy), []).append(idx)

    def outgoing_at(x: float, y: float) -> List[int]:
        kx, ky = junction_key(x, y)
        found: List[int] = []
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                found.extend(starts.get((kx + ox, ky + oy), ()))
        return found

    def tangent(idx: int, at_start: bool) -> Tuple[float, float]:
        i, a0, a1 = kept[idx]
        ang = a0 if at_start else a1
        return (-math.sin(ang), math.cos(ang))

    used = [False] * len(kept)
    loops: List[List[int]] = []
    for seed in range(len(kept)):
        if used[seed]:
            continue
        loop = [seed]
        used[seed] = True
        cur = seed
        closed = False
        for _ in range(len(kept) + 1):
            ex, ey = arc_pts[cur][2], arc_pts[cur][3]
            cands = [c for c in outgoing_at(ex, ey) if c == seed or not used[c]]
            if not cands:
                break
            if len(cands) == 1:
                nxt = cands[0]
            else:
                # junction where several circles meet: continue along the
                # smallest clockwise turn, staying on this complement wedge
                tx, ty = tangent(cur, at_start=False)
                base = math.atan2(ty, tx)

                def cw_turn(c: int) -> float:
                    ox, oy = tangent(c, at_start=True)
                    return (base - math.atan2(oy, ox)) % _TWO_PI

                nxt = min(cands, key=cw_turn)
            if nxt == seed:
                closed = True
                break
            loop.append(nxt)
            used[nxt] = True
            cur = nxt
        if closed:
            loops.append(loop)

    holes: List[List[Arc]] = []
    for loop in loops:
        area2 = 0.0
        for idx in loop:
            i, a0, a1 = kept[idx]
            sx, sy, ex, ey = arc_pts[idx]
            area2 += sx * ey - ex * sy
            span = (a1 - a0) % _TWO_PI
            if span <= 0.0:
                span = math.pi  # half-circle pieces of a full circle
            area2 += r[i] * r[i] * (span - math.sin(span))
        if area2 < 0.0:
            arcs = [
                Arc(circle=disks[i], start_angle=a0 % _TWO_PI, end_angle=a1 % _TWO_PI)
                for (i, a0, a1) in (kept[idx] for idx in loop)
            ]
            holes.append(arcs)
    return holes


def _polygon_centroid(xy: np.ndarray) -> Point:
    x = xy[:, 0]
    y = xy[:, 1]
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    crossed = x * yn - xn * y
    a = crossed.sum() / 2.0
    if abs(a) < 1e-300:
        return Point(float(x.mean()), float(y.mean()))
    cx = ((x + xn) * crossed).sum() / (6.0 * a)
    cy = ((y + yn) * crossed).sum() / (6.0 * a)
    return Point(float(cx), float(cy))


def _curve_polyline(curve: Sequence[Arc], per_arc: int = SEGMENTS_PER_ARC) -> np.ndarray:
    pts = []
    for arc in curve:
        span = arc.span
        if span <= 0.0:
            span = math.pi
        c = arc.circle
        angles = arc.start_angle + span * np.arange(per_arc) / per_arc
        pts.append(
            np.column_stack(
                [c.center.x + c.radius * np.cos(angles), c.center.y + c.radius * np.sin(angles)]
            )
        )
    return np.concatenate(pts)


def _hole_is_deep(t: Triangulation, d: DepthLabels, j: int, curve: Sequence[Arc], scale: float) -> bool:
    """True when the region bounded by the curve really is the level-(j+1) side.

    The disk union can enclose pockets that belong to shallow levels or lie
    outside the hull entirely; those bounded complement faces are not level
    boundaries.  A point nudged into the hole decides it: its insertion depth
    is one plus the smallest vertex depth over all circumdisks that strictly
    contain it, and that conflict set is exactly the cavity the incremental
    builder already knows how to walk.
    """
    builder = t._builder
    depth = d.depth
    arc = max(curve, key=lambda a: a.span if a.span > 0.0 else math.pi)
    span = arc.span if arc.span > 0.0 else math.pi
    mid = arc.start_angle + span / 2.0
    c = arc.circle
    mx = c.center.x + c.radius * math.cos(mid)
    my = c.center.y + c.radius * math.sin(mid)
    # the hole lies on the far side of this arc from its own disk center
    nx, ny = math.cos(mid), math.sin(mid)
    sample = None
    for delta in (1e-6 * scale, 1e-9 * scale, 1e-12 * scale):
        sx, sy = mx + delta * nx, my + delta * ny
        if all(
            math.hypot(sx - o.circle.center.x, sy - o.circle.center.y) >= o.circle.radius
            for o in curve
        ):
            sample = (sx, sy)
            break
    if sample is None:
        return False
    sx, sy = sample
    tv, tn = builder.tv, builder.tn
    start = builder.locate(sx, sy)
    if tv[3 * start + 2] == -1 or not builder._conflict(start, sx, sy):
        return False
    best = min(depth[tv[3 * start]], depth[tv[3 * start + 1]], depth[tv[3 * start + 2]])
    cavity = {start}
    stack = [start]
    while stack:
        tri = stack.pop()
        k = 3 * tri
        for jj in range(3):
            nb = tn[k + jj]
            if nb in cavity or tv[3 * nb + 2] == -1:
                continue
            if builder._conflict(nb, sx, sy):
                cavity.add(nb)
                stack.append(nb)
                m = min(depth[tv[3 * nb]], depth[tv[3 * nb + 1]], depth[tv[3 * nb + 2]])
                if m < best:
                    best = m
    return int(best) >= j


def depth_contours(t: Triangulation, d: DepthLabels) -> LevelSet:
    """All level boundaries: the hull polygon plus one arc contour per deeper level."""
    coords = t.point_set.coords
    hull = t.hull
    hull_xy = coords[hull]
    scale = float(max(1.0, np.abs(coords).max()))
    contours = [
        DepthContour(level=1, polygon_indices=tuple(int(v) for v in hull), polygon=hull_xy)
    ]
    for j in range(2, d.set_depth + 1):
        circles = boundary_circles(t, d, j)
        if not circles:
            break
        curves = [
            c for c in union_hole_boundary(circles) if _hole_is_deep(t, d, j, c, scale)
        ]
        if not curves:
            break
        contours.append(DepthContour(level=j, curves=tuple(tuple(c) for c in curves)))

    deepest = contours[-1]
    if deepest.level == 1:
        medians = (_polygon_centroid(hull_xy),)
    else:
        medians = tuple(_polygon_centroid(_curve_polyline(c)) for c in deepest.curves)
    return LevelSet(
        contours=tuple(contours), depth_of_set=d.set_depth, medians=medians, _scale=scale
    )


def _dist_to_polygon(px: float, py: float, poly: np.ndarray) -> float:
    x0 = poly[:, 0]
    y0 = poly[:, 1]
    x1 = np.roll(x0, -1)
    y1 = np.roll(y0, -1)
    vx, vy = x1 - x0, y1 - y0
    wx, wy = px - x0, py - y0
    seg2 = vx * vx + vy * vy
    tpar = np.clip((wx * vx + wy * vy) / np.where(seg2 == 0.0, 1.0, seg2), 0.0, 1.0)
    qx = x0 + tpar * vx
    qy = y0 + tpar * vy
    return float(np.hypot(px - qx, py - qy).min())


def _dist_to_curve(px: float, py: float, curve: Sequence[Arc]) -> float:
    best = math.inf
    for arc in curve:
        c = arc.circle
        ddx, ddy = px - c.center.x, py - c.center.y
        dc = math.hypot(ddx, ddy)
        phi = math.atan2(ddy, ddx) % _TWO_PI
        span = arc.span
        if span <= 0.0:
            span = math.pi
        if (phi - arc.start_angle) % _TWO_PI <= span:
            best = min(best, abs(dc - c.radius))
        else:
            for ang in (arc.start_angle, arc.end_angle):
                ex = c.center.x + c.radius * math.cos(ang)
                ey = c.center.y + c.radius * math.sin(ang)
                best = min(best, math.hypot(px - ex, py - ey))
    return best


def _crossings_polygon(px: float, py: float, poly: np.ndarray) -> Tuple[int, bool]:
    """Crossing parity of the +x ray with a polygon; flags near-vertex hits."""
    n = poly.shape[0]
    count = 0
    risky = False
    span = float(np.abs(poly).max()) + 1.0
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        if y0 == y1:
            if py == y0:
                risky = True
            continue
        if min(abs(py - y0), abs(py - y1)) < 1e-12 * span:
            risky = True
        if (y0 <= py) != (y1 <= py):
            xc = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if xc > px:
                count += 1
            elif abs(xc - px) < 1e-12 * span:
                risky = True
    return count, risky


def _crossings_curve(px: float, py: float, curve: Sequence[Arc], scale: float) -> Tuple[int, bool]:
    """Crossing parity of the +x ray with a closed arc curve; flags grazing hits."""
    count = 0
    risky = False
    tiny = 1e-12 * scale
    for arc in curve:
        c = arc.circle
        dy = py - c.center.y
        if abs(abs(dy) - c.radius) < tiny:
            risky = True
            continue
        if abs(dy) >= c.radius:
            continue
        half = math.sqrt(c.radius * c.radius - dy * dy)
        span = arc.span
        if span <= 0.0:
            span = math.pi
        for sgn in (1.0, -1.0):
            xc = c.center.x + sgn * half
            if xc <= px:
                if abs(xc - px) < tiny:
                    risky = True
                continue
            phi = math.atan2(dy, sgn * half) % _TWO_PI
            rel = (phi - arc.start_angle) % _TWO_PI
            if rel < span:
                count += 1
            if min(rel, abs(span - rel), _TWO_PI - rel) < 1e-9:
                risky = True
    return count, risky


def _inside_contour(px: float, py: float, contour: DepthContour, scale: float) -> bool:
    jitters = (0.0, 1.37e-8 * scale, -2.53e-8 * scale, 3.11e-8 * scale)
    parity = 0
    for jit in jitters:
        qy = py + jit
        if contour.level == 1:
            parity, risky = _crossings_polygon(px, qy, contour.polygon)
        else:
            parity = 0
            risky = False
            for curve in contour.curves:
                cnt, curve_risky = _crossings_curve(px, qy, curve, scale)
                parity += cnt
                risky = risky or curve_risky
        if not risky:
            break
    return parity % 2 == 1


def classify(ls: LevelSet, p: Sequence[float]) -> int:
    """Level of an arbitrary point: 1 outside the hull, else one more than the
    deepest contour whose region contains it.

    Points within the scaled tolerance of any contour curve are ambiguous
    between two consecutive levels and raise BoundaryAmbiguityError.
    """
    px, py = float(p[0]), float(p[1])
    tol = 1e-9 * (1.0 + ls._scale)
    for contour in reversed(ls.contours):
        if contour.level == 1:
            dist = _dist_to_polygon(px, py, contour.polygon)
        else:
            dist = min(_dist_to_curve(px, py, curve) for curve in contour.curves)
        if dist <= tol:
            raise BoundaryAmbiguityError(contour.level, contour.level + 1)
    for contour in reversed(ls.contours):
        if _inside_contour(px, py, contour, ls._scale):
            return contour.level + 1
    return 1
