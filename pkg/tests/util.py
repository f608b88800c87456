"""Independent oracles and fixture builders for the test suite.

Oracles deliberately use a different cell representation (frozen vertex
sets) and independently written traversals, so they share no code path
with the implementation they check.
"""

from collections import Counter, deque
from itertools import combinations, product

from gridtopo import CubicalCell, ManifoldComplex

# ---------------------------------------------------------------------------
# Builders.


def polyomino_boundary_cells(pixels):
    counts = Counter()
    for p in pixels:
        for f in CubicalCell.make(p, (0, 1)).faces():
            counts[f] += 1
    return [f for f, k in counts.items() if k == 1]


def solid_surface_cells(voxels):
    counts = Counter()
    for v in voxels:
        for f in CubicalCell.make(v, (0, 1, 2)).faces():
            counts[f] += 1
    return [f for f, k in counts.items() if k == 1]


def curve_from_pixels(ambient, pixels):
    return ManifoldComplex.make(ambient, 1, polyomino_boundary_cells(pixels))


def surface_from_voxels(ambient, voxels):
    return ManifoldComplex.make(ambient, 2, solid_surface_cells(voxels))


U_PIXELS = [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (2, 1), (2, 2)]
BOX333_VOXELS = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
TORUS_VOXELS = [v for v in BOX333_VOXELS if not (v[0] == 1 and v[1] == 1)]


# ---------------------------------------------------------------------------
# Independent BFS oracle over explicit adjacency dictionaries.


def bfs_levels(adjacency, source):
    seen = {source: 0}
    frontier = [source]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            for v in adjacency.get(u, ()):
                if v not in seen:
                    seen[v] = level
                    nxt.append(v)
        frontier = nxt
    return seen


def edge_graph_of_complex(M):
    adjacency = {}
    for e in M.closure.get(1, frozenset()):
        (a,) = e.axes
        u = e.base
        w = list(u)
        w[a] += 1
        w = tuple(w)
        adjacency.setdefault(u, set()).add(w)
        adjacency.setdefault(w, set()).add(u)
    return adjacency


def grid_graph(extent):
    adjacency = {}
    ranges = [range(lo, hi + 1) for lo, hi in extent]
    for v in product(*ranges):
        nbs = set()
        for a in range(len(extent)):
            for d in (-1, 1):
                w = list(v)
                w[a] += d
                if extent[a][0] <= w[a] <= extent[a][1]:
                    nbs.add(tuple(w))
        adjacency[v] = nbs
    return adjacency


# ---------------------------------------------------------------------------
# k-cell chain oracle: cells as frozen vertex sets.


def _grid_k_cells(extent, k):
    n = len(extent)
    cells = []
    for axes in combinations(range(n), k):
        ranges = []
        for i in range(n):
            lo, hi = extent[i]
            ranges.append(range(lo, hi) if i in axes else range(lo, hi + 1))
        for base in product(*ranges):
            vs = []
            for offs in product((0, 1), repeat=k):
                v = list(base)
                for a, o in zip(axes, offs):
                    v[a] += o
                vs.append(tuple(v))
            cells.append(frozenset(vs))
    return cells


def _complex_k_cells(M, k):
    out = []
    for c in M.closure.get(k, frozenset()):
        out.append(frozenset(c.vertices()))
    return out


def oracle_chain_distance(space, x, y, k, extent=None):
    """Minimum k-cells in a chain from x to y, consecutive cells sharing
    2^(k-1) vertices (a common (k-1)-cell for unit cubes)."""
    if extent is not None:
        cells = _grid_k_cells(extent, k)
    else:
        cells = _complex_k_cells(space, k)
    share = 2 ** (k - 1)
    starts = [c for c in cells if x in c]
    if not starts:
        return None
    dist = {c: 1 for c in starts}
    queue = deque(starts)
    best = None
    for c in starts:
        if y in c:
            return 1
    while queue:
        c = queue.popleft()
        d = dist[c]
        if best is not None and d >= best:
            continue
        for other in cells:
            if other not in dist and len(c & other) == share:
                dist[other] = d + 1
                if y in other:
                    best = d + 1 if best is None else min(best, d + 1)
                else:
                    queue.append(other)
    return best


# ---------------------------------------------------------------------------
# Exhaustive filling oracles.


def oracle_min_paths(extent, p, q, cap):
    """All minimum-length simple vertex paths p -> q by exhaustive DFS."""
    best = [None]
    found = []

    def neighbors(v):
        for a in range(len(extent)):
            for d in (-1, 1):
                w = list(v)
                w[a] += d
                if extent[a][0] <= w[a] <= extent[a][1]:
                    yield tuple(w)

    def dfs(v, path):
        if best[0] is not None and len(path) - 1 > best[0]:
            return
        if v == q:
            length = len(path) - 1
            if best[0] is None or length < best[0]:
                best[0] = length
                found.clear()
            if length == best[0]:
                found.append(list(path))
            return
        if len(path) - 1 >= cap:
            return
        for w in neighbors(v):
            if w not in path:
                path.append(w)
                dfs(w, path)
                path.pop()

    dfs(p, [p])
    return best[0], found


def face_vertices(cell):
    return frozenset(cell.vertices())


def _face_edges(face):
    """Edges of a face given as a frozenset of 4 vertices."""
    vs = sorted(face)
    edges = []
    for a, b in combinations(vs, 2):
        if sum(abs(x - y) for x, y in zip(a, b)) == 1:
            edges.append(frozenset((a, b)))
    return edges


def oracle_min_surface_fillings(extent, cycle_edges, max_n, budget=2_000_000):
    """Minimum face sets whose boundary is exactly the given edge set.

    Faces are frozen vertex quadruples; connected candidate sets are grown
    from faces covering the smallest cycle edge, exhaustively up to max_n.
    """
    all_faces = _grid_k_cells(extent, 2)
    by_edge = {}
    for f in all_faces:
        for e in _face_edges(f):
            by_edge.setdefault(e, []).append(f)
    target = set(cycle_edges)
    anchor = sorted(target, key=sorted)[0]

    def boundary(fs):
        cnt = Counter()
        for f in fs:
            for e in _face_edges(f):
                cnt[e] += 1
        if any(k > 2 for k in cnt.values()):
            return None
        return {e for e, k in cnt.items() if k == 1}

    nodes = [0]

    for bound in range(1, max_n + 1):
        results = []
        seen = set()

        def grow(fs):
            nodes[0] += 1
            if nodes[0] > budget:
                raise RuntimeError("oracle budget exhausted")
            bd = boundary(fs)
            if bd is not None and bd == target:
                if len(fs) == bound:
                    results.append(set(fs))
                return
            if len(fs) >= bound:
                return
            if bd is not None:
                # each extra face toggles at most 4 edges of the boundary
                deficit = len(bd.symmetric_difference(target))
                if len(fs) + (deficit + 3) // 4 > bound:
                    return
            frontier = set()
            for f in fs:
                for e in _face_edges(f):
                    for g in by_edge.get(e, ()):
                        if g not in fs:
                            frontier.add(g)
            for g in sorted(frontier, key=sorted):
                nfs = fs | {g}
                key = frozenset(nfs)
                if key in seen:
                    continue
                seen.add(key)
                grow(nfs)

        for f0 in sorted(by_edge.get(anchor, ()), key=sorted):
            key = frozenset([f0])
            if key not in seen:
                seen.add(key)
                grow({f0})
        if results:
            return bound, results
    return None, []
