"""Subcomplexes of the ambient grid and discrete-manifold validation.

A ManifoldComplex is a finite set of m-cells plus its derived closure.  The
validation report checks the regular-manifold conditions: coface counts of
(m-1)-cells, connectivity through shared (m-1)-cells, and the local link
condition at every vertex.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .cells import AmbientSpace, Coord, CubicalCell
from .errors import CellNotInComplex

CellSet = FrozenSet[CubicalCell]


@dataclass(frozen=True)
class ManifoldComplex:
    """A set of top-dimensional cells in an ambient box."""

    ambient: AmbientSpace
    m: int
    cells: CellSet

    @staticmethod
    def make(ambient: AmbientSpace, m: int, cells: Iterable[CubicalCell]) -> "ManifoldComplex":
        cs = frozenset(cells)
        for c in cs:
            if c.dim != m:
                raise ValueError(f"cell {c} has dim {c.dim}, expected {m}")
            if not ambient.contains_cell(c):
                raise ValueError(f"cell {c} outside ambient extent")
        return ManifoldComplex(ambient, m, cs)

    @cached_property
    def closure(self) -> Dict[int, CellSet]:
        by_dim: Dict[int, set] = defaultdict(set)
        for c in self.cells:
            for f in c.all_faces():
                by_dim[f.dim].add(f)
        return {d: frozenset(s) for d, s in by_dim.items()}

    @cached_property
    def vertices(self) -> FrozenSet[Coord]:
        return frozenset(c.base for c in self.closure.get(0, frozenset()))

    @cached_property
    def edges(self) -> CellSet:
        return self.closure.get(1, frozenset())

    @cached_property
    def coface_counts(self) -> Dict[CubicalCell, int]:
        """For each (m-1)-cell of the closure, how many m-cells contain it."""
        counts: Counter = Counter()
        for c in self.cells:
            for f in c.faces():
                counts[f] += 1
        return dict(counts)

    @cached_property
    def face_to_cells(self) -> Dict[CubicalCell, Tuple[CubicalCell, ...]]:
        mapping: Dict[CubicalCell, List[CubicalCell]] = defaultdict(list)
        for c in sorted(self.cells):
            for f in c.faces():
                mapping[f].append(c)
        return {f: tuple(cs) for f, cs in mapping.items()}

    def contains(self, cell: CubicalCell) -> bool:
        return cell in self.closure.get(cell.dim, frozenset())

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(s) for d, s in self.closure.items())

    def boundary(self) -> CellSet:
        """(m-1)-cells lying in exactly one m-cell."""
        return frozenset(f for f, k in self.coface_counts.items() if k == 1)

    def is_closed(self) -> bool:
        return all(k == 2 for k in self.coface_counts.values())

    def adjacency(self) -> Dict[CubicalCell, Tuple[CubicalCell, ...]]:
        """m-cell adjacency through shared (m-1)-cells."""
        adj: Dict[CubicalCell, List[CubicalCell]] = {c: [] for c in self.cells}
        for f, cs in self.face_to_cells.items():
            for a in cs:
                for b in cs:
                    if a != b:
                        adj[a].append(b)
        return {c: tuple(sorted(set(v))) for c, v in adj.items()}

    def replace(self, removed: Iterable[CubicalCell], added: Iterable[CubicalCell]) -> "ManifoldComplex":
        return ManifoldComplex.make(self.ambient, self.m, (self.cells - frozenset(removed)) | frozenset(added))

    def canonical_cells(self) -> Tuple[CubicalCell, ...]:
        return tuple(sorted(self.cells))


@dataclass(frozen=True)
class Cycle:
    """A closed regular (m-1)-submanifold used as a separating boundary."""

    cells: CellSet
    m: int

    @property
    def dim(self) -> int:
        return self.m - 1

    def canonical_cells(self) -> Tuple[CubicalCell, ...]:
        return tuple(sorted(self.cells))

    def vertex_set(self) -> FrozenSet[Coord]:
        out = set()
        for c in self.cells:
            out.update(c.vertices())
        return frozenset(out)

    def is_valid(self) -> bool:
        """Closed (every (dim-1)-cell in exactly two cells) and connected."""
        if not self.cells:
            return False
        if self.dim == 0:
            return len(self.cells) == 2
        counts: Counter = Counter()
        for c in self.cells:
            for f in c.faces():
                counts[f] += 1
        if any(k != 2 for k in counts.values()):
            return False
        return len(_components(self.cells, self.dim)) == 1


@dataclass(frozen=True)
class ValidationReport:
    is_manifold: bool
    is_closed: bool
    is_regular: bool
    link_spheres_ok: bool
    offending_cells: Tuple[CubicalCell, ...]

    @property
    def ok(self) -> bool:
        return self.is_manifold and self.is_closed and self.is_regular and self.link_spheres_ok

    def __str__(self) -> str:
        flags = (
            f"manifold={self.is_manifold} closed={self.is_closed} "
            f"regular={self.is_regular} links={self.link_spheres_ok}"
        )
        if self.offending_cells:
            flags += f" offending={list(self.offending_cells[:4])}"
        return flags


def _components(cells: Iterable[CubicalCell], dim: int) -> List[CellSet]:
    """Connected components under shared-(dim-1)-cell adjacency."""
    cells = set(cells)
    if dim == 0:
        return [frozenset([c]) for c in sorted(cells)]
    by_face: Dict[CubicalCell, List[CubicalCell]] = defaultdict(list)
    for c in cells:
        for f in c.faces():
            by_face[f].append(c)
    seen: set = set()
    comps: List[CellSet] = []
    for start in sorted(cells):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            cur = queue.popleft()
            for f in cur.faces():
                for nb in by_face[f]:
                    if nb not in seen:
                        seen.add(nb)
                        comp.add(nb)
                        queue.append(nb)
        comps.append(frozenset(comp))
    return comps


def components(cells: Iterable[CubicalCell], dim: int) -> List[CellSet]:
    return _components(cells, dim)


def region_boundary(region: Iterable[CubicalCell]) -> CellSet:
    """Cells of one lower dimension with an odd number of cofaces in region."""
    counts: Counter = Counter()
    for c in region:
        for f in c.faces():
            counts[f] += 1
    return frozenset(f for f, k in counts.items() if k % 2 == 1)


def region_surface(ambient: AmbientSpace, solid: Iterable[CubicalCell]) -> CellSet:
    """Boundary faces of a set of top-dimensional cells (the visible surface)."""
    return region_boundary(solid)


def star(M: ManifoldComplex, x: CubicalCell) -> CellSet:
    """All cells of the closure containing x as a face, plus x itself."""
    if not M.contains(x):
        raise CellNotInComplex(f"{x} not in complex")
    out = {x}
    for d, cells in M.closure.items():
        if d <= x.dim:
            continue
        for c in cells:
            if c.contains(x):
                out.add(c)
    return frozenset(out)

def link(M: ManifoldComplex, x: CubicalCell) -> CellSet:
    """Faces of the star cells that are disjoint from x.

    For a vertex of a closed curve this is the two opposite endpoints; for
    a vertex of a closed surface it is the cycle of edges and vertices
    running around x on the incident faces.
    """
    st = star(M, x)
    x_pts = set(x.vertices())
    out = set()
    for c in st:
        for f in c.all_faces():
            if not (set(f.vertices()) & x_pts):
                out.add(f)
    return frozenset(out)


def _vertex_link_ok(M: ManifoldComplex, v: Coord, boundary_faces: CellSet) -> bool:
    """Check the local structure of M around vertex v.

    The m-cells incident to v, connected through shared (m-1)-cells that
    also contain v, must form a single cycle (interior vertex) or a single
    path (vertex on the boundary of an arc).
    """
    vx = CubicalCell(0, v, ())
    incident = [c for c in M.cells if c.contains(vx)]
    if not incident:
        return False
    if M.m == 1:
        return len(incident) in (1, 2)
    local_faces: Dict[CubicalCell, List[CubicalCell]] = defaultdict(list)
    for c in incident:
        for f in c.faces():
            if f.contains(vx):
                local_faces[f].append(c)
    if any(len(cs) > 2 for cs in local_faces.values()):
        return False
    # Walk the incident cells as a graph; a disk or half-disk neighborhood
    # is exactly one component with every local face shared by <= 2 cells.
    adj: Dict[CubicalCell, set] = {c: set() for c in incident}
    for f, cs in local_faces.items():
        if len(cs) == 2:
            adj[cs[0]].add(cs[1])
            adj[cs[1]].add(cs[0])
    seen = set()
    queue = deque([incident[0]])
    seen.add(incident[0])
    while queue:
        cur = queue.popleft()
        for nb in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    if len(seen) != len(incident):
        return False
    open_ends = sum(1 for f, cs in local_faces.items() if len(cs) == 1)
    if any(f in boundary_faces for f in local_faces):
        return True  # boundary vertex: a single path suffices
    return open_ends == 0


def validate(M: ManifoldComplex) -> ValidationReport:
    """Check the regular-manifold conditions and report, never raise."""
    offending: set = set()
    counts = M.coface_counts
    bad_counts = [f for f, k in counts.items() if k > 2]
    offending.update(bad_counts)
    is_manifold = not bad_counts
    is_closed = is_manifold and all(k == 2 for k in counts.values())

    comps = _components(M.cells, M.m)
    connected = len(comps) == 1
    if not connected and comps:
        offending.update(sorted(comps[-1])[:1])
    is_regular = is_manifold and connected

    boundary_faces = frozenset(f for f, k in counts.items() if k == 1)
    link_ok = True
    for v in sorted(M.vertices):
        if not _vertex_link_ok(M, v, boundary_faces):
            link_ok = False
            offending.add(CubicalCell(0, v, ()))
    return ValidationReport(
        is_manifold=is_manifold,
        is_closed=is_closed,
        is_regular=is_regular,
        link_spheres_ok=link_ok,
        offending_cells=tuple(sorted(offending)),
    )


def split_by_cycle(M: ManifoldComplex, cycle: Cycle) -> List[CellSet]:
    """Components of M's m-cells when adjacency may not cross the cycle."""
    cut = cycle.cells
    adj_faces = {f: cs for f, cs in M.face_to_cells.items() if f not in cut}
    seen: set = set()
    comps: List[CellSet] = []
    neighbor: Dict[CubicalCell, List[CubicalCell]] = defaultdict(list)
    for f, cs in adj_faces.items():
        if len(cs) == 2:
            neighbor[cs[0]].append(cs[1])
            neighbor[cs[1]].append(cs[0])
    for start in sorted(M.cells):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nb in neighbor[cur]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(frozenset(comp))
    return comps
