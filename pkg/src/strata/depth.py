"""Depth labels on the triangulation graph and the induced layer structure.

A vertex's depth is one plus its graph distance to the boundary cycle, so the
labels come from one multi-source breadth-first traversal seeded at every
boundary vertex.  A layer is the subgraph induced by one depth class; its
cycles are the boundaries of the bounded faces of that plane subgraph,
extracted by next-edge walking in the rotation system given by the embedding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .triangulation import Triangulation

__all__ = ["DepthLabels", "Layer", "delaunay_depths", "layers", "component_count"]


@dataclass(frozen=True)
class DepthLabels:
    """Per-vertex depth values plus the depth of the set (their maximum)."""

    depth: np.ndarray
    set_depth: int

    def __post_init__(self):
        self.depth.setflags(write=False)

    def __getitem__(self, v: int) -> int:
        return int(self.depth[v])


@dataclass
class Layer:
    """Subgraph induced by the vertices of one depth class."""

    index: int
    vertices: List[int]
    edges: List[Tuple[int, int]]
    components: List[List[int]]
    cycles: List[List[int]] = field(default_factory=list)


def delaunay_depths(t: Triangulation) -> DepthLabels:
    """Depth label for every vertex: 1 on the boundary, else 1 + BFS distance."""
    n = len(t.point_set)
    indptr, indices = t.adjacency_csr
    depth = np.zeros(n, dtype=np.int64)
    frontier = np.asarray(t.hull, dtype=np.int64)
    d = 1
    depth[frontier] = d
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        shift = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        neigh = indices[base + shift]
        cand = neigh[depth[neigh] == 0]
        if cand.size == 0:
            break
        frontier = np.unique(cand)
        d += 1
        depth[frontier] = d
    return DepthLabels(depth=depth, set_depth=int(depth.max()))


def _sorted_rotation(coords: np.ndarray, adj: Dict[int, List[int]]) -> Dict[int, List[int]]:
    """Neighbors of each vertex in counterclockwise angular order."""
    rot = {}
    for v, nbrs in adj.items():
        vx, vy = coords[v]
        rot[v] = sorted(nbrs, key=lambda u: math.atan2(coords[u][1] - vy, coords[u][0] - vx))
    return rot


def _bounded_faces(coords: np.ndarray, adj: Dict[int, List[int]]) -> List[List[int]]:
    """Boundary walks of the bounded faces of a straight-line plane graph.

    Each directed edge is traversed once; leaving a vertex through the
    clockwise predecessor of the arrival edge traces every face, and the
    bounded ones are those whose walk has positive signed area (edges walked
    twice, e.g. bridges, cancel exactly).
    """
    rot = _sorted_rotation(coords, adj)
    pos = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rot.items()}
    visited = set()
    faces = []
    for v0, nbrs in rot.items():
        for u0 in nbrs:
            if (v0, u0) in visited:
                continue
            walk = []
            area2 = 0.0
            u, v = v0, u0
            while (u, v) not in visited:
                visited.add((u, v))
                walk.append(u)
                area2 += coords[u][0] * coords[v][1] - coords[v][0] * coords[u][1]
                nbrs_v = rot[v]
                u, v = v, nbrs_v[pos[v][u] - 1]
            if area2 > 0.0:
                faces.append(walk)
    return faces


def layers(t: Triangulation, d: DepthLabels) -> List[Layer]:
    """Layers 1..set_depth with their components and bounding cycles."""
    coords = t.point_set.coords
    edge_arr = t.edges
    depth = d.depth
    eu = depth[edge_arr[:, 0]]
    ev = depth[edge_arr[:, 1]]
    out = []
    for i in range(1, d.set_depth + 1):
        verts = np.nonzero(depth == i)[0].tolist()
        mask = (eu == i) & (ev == i)
        edges = [(int(a), int(b)) for a, b in edge_arr[mask]]
        adj: Dict[int, List[int]] = {v: [] for v in verts}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        components = []
        seen = set()
        for v in verts:
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            stack = [v]
            while stack:
                w = stack.pop()
                for u in adj[w]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            components.append(sorted(comp))
        cycles = _bounded_faces(coords, adj) if edges else []
        out.append(Layer(index=i, vertices=verts, edges=edges, components=components, cycles=cycles))
    return out


def component_count(layer_seq: Sequence[Layer]) -> int:
    """Total number of connected components across all layers."""
    return sum(len(layer.components) for layer in layer_seq)


def point_in_cycle(coords: np.ndarray, cycle: Sequence[int], px: float, py: float) -> bool:
    """Even-odd test of a point against a closed vertex walk.

    Edges walked twice (bridges hanging into a face) cancel, so the test
    answers membership in the bounded region of the walk.
    """
    crossings = 0
    m = len(cycle)
    for i in range(m):
        x0, y0 = coords[cycle[i]]
        x1, y1 = coords[cycle[(i + 1) % m]]
        if (y0 <= py) != (y1 <= py):
            xc = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if xc > px:
                crossings += 1
    return crossings % 2 == 1
