"""Delaunay triangulation with incremental point insertion.

Construction is Bowyer-Watson insertion into a triangulation that carries
ghost triangles: every boundary edge u->v (counterclockwise, interior on the
left) is paired with a ghost triple (v, u, GHOST) standing for the unbounded
region beyond that edge.  Ghosts let interior and exterior insertions share
one code path.  Points are inserted in Morton order so that the point-location
walk starts near its target; all conflict decisions go through the exact
predicates, so the structure is combinatorially correct on any input.

Cocircular ties are resolved deterministically: among the two diagonals of a
cocircular quadrilateral the one whose index pair is lexicographically
smallest is preferred (``tie_break="low"``; ``"high"`` prefers the largest,
which only exists so tests can verify that depths do not depend on the
choice).
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateInputError, DuplicatePointError
from .predicates import Point, _in_circle_raw, _orient_raw

__all__ = ["PointSet", "Triangulation", "convex_hull", "delaunay", "insert_point"]

GHOST = -1


class PointSet:
    """Immutable indexed collection of distinct finite planar points."""

    def __init__(self, points: Iterable[Sequence[float]]):
        coords = np.array([(float(p[0]), float(p[1])) for p in points], dtype=np.float64)
        if coords.ndim != 2 or coords.shape[0] == 0:
            raise ValueError("a point set needs at least one point")
        if not np.all(np.isfinite(coords)):
            bad = int(np.nonzero(~np.isfinite(coords).all(axis=1))[0][0])
            raise ValueError(f"point {bad} has a non-finite coordinate")
        uniq, first = np.unique(coords, axis=0, return_index=True)
        if uniq.shape[0] != coords.shape[0]:
            seen = set()
            for i, xy in enumerate(map(tuple, coords.tolist())):
                if xy in seen:
                    raise DuplicatePointError(f"point {i} duplicates an earlier point {xy}")
                seen.add(xy)
        self._coords = coords
        self._coords.setflags(write=False)
        self._index: Optional[dict] = None

    @property
    def coords(self) -> np.ndarray:
        """(n, 2) read-only float array."""
        return self._coords

    def __len__(self) -> int:
        return self._coords.shape[0]

    def __getitem__(self, i: int) -> Point:
        x, y = self._coords[i]
        return Point(float(x), float(y))

    def __iter__(self):
        for x, y in self._coords.tolist():
            yield Point(x, y)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and np.array_equal(self._coords, other._coords)

    def index_of(self, p: Sequence[float]) -> Optional[int]:
        """Index of the point with exactly these coordinates, or None."""
        if self._index is None:
            self._index = {xy: i for i, xy in enumerate(map(tuple, self._coords.tolist()))}
        return self._index.get((float(p[0]), float(p[1])))

    def with_point(self, p: Sequence[float]) -> "PointSet":
        """New point set with p appended at index n."""
        if self.index_of(p) is not None:
            raise DuplicatePointError(f"point {tuple(p)} already present")
        return PointSet(np.vstack([self._coords, [(float(p[0]), float(p[1]))]]))

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"


def convex_hull(s: PointSet) -> List[int]:
    """Counterclockwise convex hull cycle as vertex indices.

    Points interior to a hull edge are excluded.  A single point yields a
    singleton cycle; an all-collinear set yields its two extreme points.
    """
    coords = s.coords
    n = coords.shape[0]
    if n == 1:
        return [0]
    order = np.lexsort((coords[:, 1], coords[:, 0])).tolist()
    pts = coords.tolist()

    def build(idx_iter):
        chain: List[int] = []
        for i in idx_iter:
            xi, yi = pts[i]
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                if _orient_raw(pts[a][0], pts[a][1], pts[b][0], pts[b][1], xi, yi) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(i)
        return chain

    lower = build(order)
    upper = build(order[::-1])
    if len(lower) == 1:  # unreachable with distinct points, kept for safety
        return lower
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return [hull[0]]
    return hull


class _Builder:
    """Mutable Bowyer-Watson state: flat triangle/neighbor tables plus a free list.

    Triangle t occupies slots [3t, 3t+3) of ``tv`` (vertex ids, GHOST for the
    outer vertex) and ``tn`` (neighbor triangle ids; entry j is across the
    edge opposite vertex j).  ``tv[3t]`` is -2 for dead slots.
    """

    __slots__ = ("xs", "ys", "tv", "tn", "free", "last", "tie_low")

    def __init__(self, xs: List[float], ys: List[float], tie_low: bool):
        self.xs = xs
        self.ys = ys
        self.tv: List[int] = []
        self.tn: List[int] = []
        self.free: List[int] = []
        self.last = 0
        self.tie_low = tie_low

    def clone(self) -> "_Builder":
        b = _Builder(self.xs[:], self.ys[:], self.tie_low)
        b.tv = self.tv[:]
        b.tn = self.tn[:]
        b.free = self.free[:]
        b.last = self.last
        return b

    def _new_tri(self, a: int, b: int, c: int) -> int:
        tv, tn = self.tv, self.tn
        if self.free:
            t = self.free.pop()
            k = 3 * t
            tv[k] = a
            tv[k + 1] = b
            tv[k + 2] = c
            tn[k] = -1
            tn[k + 1] = -1
            tn[k + 2] = -1
        else:
            t = len(tv) // 3
            tv.extend((a, b, c))
            tn.extend((-1, -1, -1))
        return t

    def start(self, i0: int, i1: int, i2: int) -> None:
        """Seed with one ccw triangle and its three ghosts."""
        xs, ys = self.xs, self.ys
        if _orient_raw(xs[i0], ys[i0], xs[i1], ys[i1], xs[i2], ys[i2]) < 0:
            i1, i2 = i2, i1
        t = self._new_tri(i0, i1, i2)
        # ghost across boundary edge u->v is stored (v, u, GHOST)
        g01 = self._new_tri(i1, i0, GHOST)
        g12 = self._new_tri(i2, i1, GHOST)
        g20 = self._new_tri(i0, i2, GHOST)
        tn = self.tn
        tn[3 * t + 0] = g12  # across edge (i1, i2)
        tn[3 * t + 1] = g20
        tn[3 * t + 2] = g01
        for g, nxt, prv in ((g01, g20, g12), (g12, g01, g20), (g20, g12, g01)):
            tn[3 * g + 0] = nxt  # edge (tv[1], GHOST)
            tn[3 * g + 1] = prv  # edge (GHOST, tv[0])
            tn[3 * g + 2] = t
        self.last = t

    def _conflict(self, t: int, qx: float, qy: float) -> bool:
        tv, xs, ys = self.tv, self.xs, self.ys
        k = 3 * t
        a, b, c = tv[k], tv[k + 1], tv[k + 2]
        if c == GHOST:
            s = _orient_raw(xs[a], ys[a], xs[b], ys[b], qx, qy)
            if s > 0:
                return True
            if s < 0:
                return False
            # exactly on the boundary line: conflict only strictly inside the edge
            ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]
            if abs(bx - ax) >= abs(by - ay):
                lo, hi = (ax, bx) if ax < bx else (bx, ax)
                return lo < qx < hi
            lo, hi = (ay, by) if ay < by else (by, ay)
            return lo < qy < hi
        return (
            _in_circle_raw(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], qx, qy) > 0
        )

    def locate(self, qx: float, qy: float) -> int:
        """Visibility walk to a conflicting triangle (real containing q, or a
        ghost whose boundary edge q lies beyond)."""
        tv, tn, xs, ys = self.tv, self.tn, self.xs, self.ys
        t = self.last
        if tv[3 * t] == -2 or tv[3 * t + 2] == GHOST:
            t = next(i for i in range(len(tv) // 3) if tv[3 * i] != -2 and tv[3 * i + 2] != GHOST)
        came_from = -1
        limit = 4 * (len(tv) // 3) + 16
        for _ in range(limit):
            k = 3 * t
            v0, v1, v2 = tv[k], tv[k + 1], tv[k + 2]
            if v2 == GHOST:
                return t
            x0, y0 = xs[v0], ys[v0]
            x1, y1 = xs[v1], ys[v1]
            x2, y2 = xs[v2], ys[v2]
            nxt = -1
            # edges opposite each vertex slot; skip the edge we arrived through
            if tn[k + 2] != came_from and _orient_raw(x0, y0, x1, y1, qx, qy) < 0:
                nxt = tn[k + 2]
            elif tn[k] != came_from and _orient_raw(x1, y1, x2, y2, qx, qy) < 0:
                nxt = tn[k]
            elif tn[k + 1] != came_from and _orient_raw(x2, y2, x0, y0, qx, qy) < 0:
                nxt = tn[k + 1]
            if nxt == -1:
                return t
            came_from = t
            t = nxt
        raise RuntimeError("point location walk failed to terminate")

    def insert(self, qi: int) -> None:
        tv, tn, xs, ys = self.tv, self.tn, self.xs, self.ys
        qx, qy = xs[qi], ys[qi]
        seed = self.locate(qx, qy)
        if not self._conflict(seed, qx, qy):
            # the walk can stop on a real triangle whose ghost neighbour is
            # the actual conflict when q sits exactly on the boundary ray
            found = -1
            for t in range(len(tv) // 3):
                if tv[3 * t] != -2 and self._conflict(t, qx, qy):
                    found = t
                    break
            if found == -1:
                raise RuntimeError("no conflicting triangle for inserted point")
            seed = found

        # grow the conflict cavity
        cavity = {seed}
        stack = [seed]
        while stack:
            t = stack.pop()
            k = 3 * t
            for j in range(3):
                nb = tn[k + j]
                if nb != -1 and nb not in cavity and self._conflict(nb, qx, qy):
                    cavity.add(nb)
                    stack.append(nb)

        # boundary edges, directed as they appear in the dying triangle
        boundary: List[Tuple[int, int, int, int]] = []  # (e1, e2, outer_tri, outer_slot)
        for t in cavity:
            k = 3 * t
            for j in range(3):
                nb = tn[k + j]
                if nb == -1 or nb not in cavity:
                    e1 = tv[k + (j + 1) % 3]
                    e2 = tv[k + (j + 2) % 3]
                    if nb != -1:
                        ko = 3 * nb
                        slot = 0
                        for jo in range(3):
                            if tn[ko + jo] == t:
                                slot = jo
                                break
                        boundary.append((e1, e2, nb, slot))
                    else:
                        boundary.append((e1, e2, -1, -1))

        for t in cavity:
            k = 3 * t
            tv[k] = -2
            self.free.append(t)

        # star the cavity from q; rotate ghosts so GHOST sits in slot 2
        edge_map = {}
        created = []
        for e1, e2, outer, oslot in boundary:
            if e1 == GHOST:
                t = self._new_tri(e2, qi, GHOST)
                # triple (e2, qi, GHOST): edge (GHOST, e2) is opposite slot 1
                tn[3 * t + 1] = outer
                if outer != -1:
                    tn[3 * outer + oslot] = t
                edge_map[(qi, GHOST)] = (t, 0)   # edge (qi, GHOST) opposite slot 0
                edge_map[(e2, qi)] = (t, 2)      # edge (e2, qi) opposite slot 2
            elif e2 == GHOST:
                t = self._new_tri(qi, e1, GHOST)
                tn[3 * t + 0] = outer            # edge (e1, GHOST) opposite slot 0
                if outer != -1:
                    tn[3 * outer + oslot] = t
                edge_map[(GHOST, qi)] = (t, 1)
                edge_map[(qi, e1)] = (t, 2)
            else:
                t = self._new_tri(e1, e2, qi)
                tn[3 * t + 2] = outer            # edge (e1, e2) opposite slot 2
                if outer != -1:
                    tn[3 * outer + oslot] = t
                edge_map[(e2, qi)] = (t, 0)
                edge_map[(qi, e1)] = (t, 1)
                created.append(t)
        # stitch the fan: matching directed edges are reverses of each other
        for (u, v), (t, slot) in edge_map.items():
            other = edge_map.get((v, u))
            if other is not None:
                tn[3 * t + slot] = other[0]

        self.last = created[0] if created else next(iter(cavity))
        self._legalize([(t, 2) for t in created])

    def _legalize(self, pending: List[Tuple[int, int]]) -> None:
        """Lawson cascade over (triangle, slot) edges.

        Strictly illegal edges are flipped (cannot occur straight after a
        cavity insertion, kept as a safety net); exactly-cocircular edges are
        flipped only when the replacement diagonal is preferred by the
        tie-break rule, which terminates because each such flip strictly
        improves the diagonal's index pair.
        """
        tv, tn, xs, ys = self.tv, self.tn, self.xs, self.ys
        tie_low = self.tie_low
        while pending:
            t, slot = pending.pop()
            k = 3 * t
            if tv[k] == -2:
                continue
            o = tn[k + slot]
            if o == -1:
                continue
            # shared edge (a, b): t reads cyclically as (c, a, b), o as (d, b, a)
            c = tv[k + slot]
            a = tv[k + (slot + 1) % 3]
            b = tv[k + (slot + 2) % 3]
            if c == GHOST or a == GHOST or b == GHOST:
                continue
            ko = 3 * o
            oslot = 0
            for jo in range(3):
                if tn[ko + jo] == t:
                    oslot = jo
                    break
            d = tv[ko + oslot]
            if d == GHOST:
                continue
            s = _in_circle_raw(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d])
            if s < 0:
                continue
            if s == 0:
                cur = (a, b) if a < b else (b, a)
                alt = (c, d) if c < d else (d, c)
                if tie_low:
                    if not alt < cur:
                        continue
                elif not alt > cur:
                    continue
            # flip (a, b) -> (c, d): new triangles (c, a, d) and (c, d, b)
            n_bc = tn[k + (slot + 1) % 3]
            n_ca = tn[k + (slot + 2) % 3]
            n_ad = tn[ko + (oslot + 1) % 3]
            n_db = tn[ko + (oslot + 2) % 3]
            tv[k] = c
            tv[k + 1] = a
            tv[k + 2] = d
            tn[k] = n_ad
            tn[k + 1] = o
            tn[k + 2] = n_ca
            tv[ko] = c
            tv[ko + 1] = d
            tv[ko + 2] = b
            tn[ko] = n_db
            tn[ko + 1] = n_bc
            tn[ko + 2] = t
            if n_ad != -1:
                ka = 3 * n_ad
                for jo in range(3):
                    if tn[ka + jo] == o:
                        tn[ka + jo] = t
                        break
            if n_bc != -1:
                kb = 3 * n_bc
                for jo in range(3):
                    if tn[kb + jo] == t:
                        tn[kb + jo] = o
                        break
            pending.extend(((t, 0), (t, 2), (o, 0), (o, 1)))

    def real_triangles(self) -> np.ndarray:
        """(m, 3) raw ccw triangle rows (dead and ghost slots filtered out)."""
        arr = np.array(self.tv, dtype=np.int64).reshape(-1, 3)
        keep = (arr[:, 0] != -2) & (arr[:, 2] != GHOST)
        return arr[keep]

    def boundary_cycle(self) -> List[int]:
        """Boundary polygon vertices, counterclockwise (collinear boundary
        vertices included)."""
        tv = self.tv
        nxt = {}
        for t in range(len(tv) // 3):
            k = 3 * t
            if tv[k] != -2 and tv[k + 2] == GHOST:
                nxt[tv[k + 1]] = tv[k]  # ghost (v, u, GHOST): boundary edge u->v
        if not nxt:
            return []
        start = min(nxt)
        cycle = [start]
        v = nxt[start]
        while v != start:
            cycle.append(v)
            v = nxt[v]
        return cycle


def _morton_order(coords: np.ndarray) -> np.ndarray:
    mins = coords.min(axis=0)
    spans = coords.max(axis=0) - mins
    spans[spans == 0.0] = 1.0
    q = ((coords - mins) / spans * 65535.0).astype(np.uint64)

    def spread(v):
        v = (v | (v << 8)) & np.uint64(0x00FF00FF)
        v = (v | (v << 4)) & np.uint64(0x0F0F0F0F)
        v = (v | (v << 2)) & np.uint64(0x33333333)
        v = (v | (v << 1)) & np.uint64(0x55555555)
        return v

    key = spread(q[:, 0]) | (spread(q[:, 1]) << np.uint64(1))
    return np.argsort(key, kind="stable")


class Triangulation:
    """Frozen Delaunay triangulation of a point set.

    Exposes the triangle list (counterclockwise triples, canonically ordered),
    per-vertex adjacency, and the boundary cycle.  The boundary cycle lists
    every vertex on the hull boundary, including ones interior to a hull edge,
    which is what the Euler relation counts.
    """

    def __init__(self, point_set: PointSet, builder: _Builder):
        self._ps = point_set
        self._builder = builder
        self._triangles: Optional[np.ndarray] = None
        self._hull: Optional[List[int]] = None
        self._adjacency: Optional[List[List[int]]] = None
        self._csr: Optional[Tuple[np.ndarray, np.ndarray]] = None

    @property
    def point_set(self) -> PointSet:
        return self._ps

    @property
    def tie_break(self) -> str:
        return "low" if self._builder.tie_low else "high"

    @property
    def triangles(self) -> np.ndarray:
        """(m, 3) int array of ccw triangles, smallest index first per row,
        rows sorted lexicographically."""
        if self._triangles is None:
            arr = self._builder.real_triangles()
            if arr.shape[0]:
                roll = np.argmin(arr, axis=1)
                cols = (np.arange(3)[None, :] + roll[:, None]) % 3
                arr = np.take_along_axis(arr, cols, axis=1)
                order = np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))
                arr = arr[order]
            arr.setflags(write=False)
            self._triangles = arr
        return self._triangles

    @property
    def hull(self) -> List[int]:
        """Counterclockwise boundary cycle."""
        if self._hull is None:
            self._hull = self._builder.boundary_cycle()
        return list(self._hull)

    @property
    def edges(self) -> np.ndarray:
        """(e, 2) undirected edge array with u < v, sorted."""
        indptr, indices = self.adjacency_csr
        n = len(self._ps)
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        keep = src < indices
        return np.column_stack([src[keep], indices[keep]])

    @property
    def adjacency(self) -> List[List[int]]:
        """Per-vertex sorted neighbor lists."""
        if self._adjacency is None:
            indptr, indices = self.adjacency_csr
            self._adjacency = [
                indices[indptr[i]:indptr[i + 1]].tolist() for i in range(len(self._ps))
            ]
        return self._adjacency

    @property
    def adjacency_csr(self) -> Tuple[np.ndarray, np.ndarray]:
        """Compressed sparse adjacency (indptr, indices), neighbors sorted."""
        if self._csr is None:
            n = len(self._ps)
            raw = self._builder.real_triangles()
            a, b, c = raw[:, 0], raw[:, 1], raw[:, 2]
            src = np.concatenate([a, b, c, b, c, a])
            dst = np.concatenate([b, c, a, a, b, c])
            code = np.unique(src * np.int64(n) + dst)
            src = code // n
            dst = code % n
            counts = np.bincount(src, minlength=n)
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._csr = (indptr, dst)
        return self._csr

    def __repr__(self) -> str:
        return f"Triangulation(n={len(self._ps)}, triangles={self.triangles.shape[0]})"


def delaunay(s: PointSet, tie_break: str = "low") -> Triangulation:
    """Delaunay triangulation of the point set.

    Raises DegenerateInputError when n < 3 or all points are collinear.  On
    cocircular degeneracies the documented tie-break picks one valid Delaunay
    triangulation deterministically.
    """
    if tie_break not in ("low", "high"):
        raise ValueError("tie_break must be 'low' or 'high'")
    n = len(s)
    if n < 3:
        raise DegenerateInputError(f"need at least 3 points to triangulate, got {n}")
    coords = s.coords
    order = _morton_order(coords).tolist()
    xs = coords[:, 0].tolist()
    ys = coords[:, 1].tolist()

    i0, i1 = order[0], order[1]
    i2 = -1
    for j in range(2, n):
        cand = order[j]
        if _orient_raw(xs[i0], ys[i0], xs[i1], ys[i1], xs[cand], ys[cand]) != 0:
            i2 = cand
            break
    if i2 == -1:
        raise DegenerateInputError("all points are collinear; the triangulation does not exist")

    b = _Builder(xs, ys, tie_break == "low")
    b.start(i0, i1, i2)
    for idx in order[2:]:
        if idx == i2:
            continue
        b.insert(idx)
    return Triangulation(s, b)


def insert_point(t: Triangulation, p: Sequence[float]) -> Triangulation:
    """Triangulation of point_set + {p}; the input is left untouched.

    The result equals ``delaunay`` built from scratch on the extended set
    whenever the input is free of cocircular ties (where the unique Delaunay
    triangulation is produced either way); ties are resolved by the same rule
    but locally, in insertion order.
    """
    if t.point_set.index_of(p) is not None:
        raise DuplicatePointError(f"point {tuple(p)} is already in the set")
    x, y = float(p[0]), float(p[1])
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError("query point has a non-finite coordinate")
    b = t._builder.clone()
    b.xs.append(x)
    b.ys.append(y)
    b.insert(len(b.xs) - 1)
    return Triangulation(t.point_set.with_point((x, y)), b)
