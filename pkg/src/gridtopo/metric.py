"""Graph distances, k-cell chain distances, balls, and diameters.

Distances are integers: the number of edges on a shortest path for k=1,
or the number of k-cells in a shortest (k-1)-connected chain for k>1.
Distances inside a complex use only its own cells; ambient distances may
use every grid cell.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .cells import AmbientSpace, Coord, CubicalCell
from .complexes import ManifoldComplex
from .errors import Unreachable

Space = Union[ManifoldComplex, AmbientSpace]


@dataclass(frozen=True)
class DistanceTable:
    """BFS levels from a source set; `dist` maps reached cells to levels."""

    source_set: FrozenSet
    k: int
    dist: Mapping

    def __getitem__(self, key):
        return self.dist[key]

    def get(self, key, default=None):
        return self.dist.get(key, default)


def _edge_adjacency(M: ManifoldComplex) -> Dict[Coord, Tuple[Coord, ...]]:
    adj: Dict[Coord, List[Coord]] = {}
    for e in M.edges:
        (a,) = e.axes
        u = e.base
        w = list(u)
        w[a] += 1
        w = tuple(w)
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    return {v: tuple(sorted(ns)) for v, ns in adj.items()}


def vertex_distances(space: Space, sources: Iterable[Coord]) -> DistanceTable:
    """Multi-source BFS over the vertex graph (edges of the space)."""
    sources = frozenset(sources)
    dist: Dict[Coord, int] = {s: 0 for s in sources}
    queue = deque(sorted(sources))
    if isinstance(space, AmbientSpace):
        neighbors = space.vertex_neighbors
    else:
        adj = _edge_adjacency(space)
        neighbors = lambda v: adj.get(v, ())
    while queue:
        v = queue.popleft()
        d = dist[v]
        for w in neighbors(v):
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return DistanceTable(source_set=sources, k=1, dist=dist)


def _k_cells_containing(space: Space, v: Coord, k: int) -> List[CubicalCell]:
    vx = CubicalCell(0, v, ())
    if isinstance(space, AmbientSpace):
        cur = [vx]
        for _ in range(k):
            nxt = set()
            for c in cur:
                nxt.update(space.cofaces(c))
            cur = sorted(nxt)
        return cur
    return sorted(c for c in space.closure.get(k, frozenset()) if c.contains(vx))


def _k_cell_neighbors(space: Space, c: CubicalCell) -> List[CubicalCell]:
    out = set()
    if isinstance(space, AmbientSpace):
        for f in c.faces():
            for co in f.cofaces(range(space.n)):
                if co.dim == c.dim and co != c and space.contains_cell(co):
                    out.add(co)
    else:
        cells = space.closure.get(c.dim, frozenset())
        for f in c.faces():
            for co in f.cofaces(range(len(c.base))):
                if co != c and co in cells:
                    out.add(co)
    return sorted(out)


def cell_distance(space: Space, x: Coord, y: Coord, k: int = 1) -> int:
    """Shortest-chain distance between two vertices.

    For k=1 this is the edge count of a shortest path.  For k>1 it is the
    number of k-cells in a shortest chain whose consecutive cells share a
    (k-1)-cell, with x in the first cell and y in the last.
    """
    x, y = tuple(x), tuple(y)
    if k == 1:
        table = vertex_distances(space, [x])
        if y not in table.dist:
            raise Unreachable(f"{y} not reachable from {x}")
        return table.dist[y]
    starts = _k_cells_containing(space, x, k)
    if not starts:
        raise Unreachable(f"no {k}-cells contain {x}")
    goal_vertex = CubicalCell(0, y, ())
    dist: Dict[CubicalCell, int] = {c: 1 for c in starts}
    queue = deque(starts)
    best: Optional[int] = None
    for c in starts:
        if c.contains(goal_vertex):
            return 1
    while queue:
        c = queue.popleft()
        d = dist[c]
        if best is not None and d >= best:
            continue
        for nb in _k_cell_neighbors(space, c):
            if nb not in dist:
                dist[nb] = d + 1
                if nb.contains(goal_vertex):
                    if best is None or d + 1 < best:
                        best = d + 1
                else:
                    queue.append(nb)
    if best is None:
        raise Unreachable(f"no {k}-cell chain joins {x} and {y}")
    return best


def ambient_distance(ambient: AmbientSpace, x: Coord, y: Coord) -> int:
    """Manhattan distance; exact for box extents."""
    return sum(abs(a - b) for a, b in zip(x, y))


class AllPairs:
    """Vertex-pair distance tables inside M and inside the ambient."""

    def __init__(self, M: ManifoldComplex):
        self.M = M
        self._tables: Dict[Coord, DistanceTable] = {}
        for v in sorted(M.vertices):
            self._tables[v] = vertex_distances(M, [v])

    def d_m(self, x: Coord, y: Coord) -> int:
        t = self._tables[tuple(x)]
        d = t.get(tuple(y))
        if d is None:
            raise Unreachable(f"{y} not reachable from {x} in M")
        return d

    def d_u(self, x: Coord, y: Coord) -> int:
        return ambient_distance(self.M.ambient, x, y)

    def table(self, x: Coord) -> DistanceTable:
        return self._tables[tuple(x)]

    def pairs(self):
        verts = sorted(self.M.vertices)
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                yield u, v, self.d_m(u, v), self.d_u(u, v)


def all_pairs(M: ManifoldComplex) -> AllPairs:
    return AllPairs(M)


def diameter(M: ManifoldComplex, in_ambient: bool = False) -> Tuple[int, Tuple[Coord, Coord]]:
    """Largest pairwise vertex distance with its least witness pair."""
    ap = all_pairs(M)
    best = -1
    witness = None
    for u, v, dm, du in ap.pairs():
        d = du if in_ambient else dm
        if d > best:
            best = d
            witness = (u, v)
    if witness is None:
        raise ValueError("complex has fewer than two vertices")
    return best, witness


def ball(M: ManifoldComplex, center: CubicalCell, gamma: int) -> FrozenSet[CubicalCell]:
    """m-cells of M whose every vertex lies within gamma of the center.

    The center may be any cell of M's closure; vertex distances are taken
    inside M from the center's own vertices.
    """
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    table = vertex_distances(M, center.vertices())
    out = []
    for c in M.cells:
        ds = [table.get(v) for v in c.vertices()]
        if all(d is not None and d <= gamma for d in ds):
            out.append(c)
    return frozenset(out)
