"""Boundary-cycle fitting, curviness measures, peak selection, arc signs.

The curviness of an arc compares its cell count against the cell count of
a minimum filling of its boundary.  Four measures are kept side by side:
the ratio, the difference, the height of the arc over the filling, and the
height scaled by the filling span.  Peaks are selected by scanning balls
around every cell of the manifold closure; using edges and faces as ball
centers in addition to vertices reaches the odd-diameter arcs a vertex
center cannot produce.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional

from .cells import AmbientSpace, CubicalCell
from .complexes import Cycle, ManifoldComplex, components, region_boundary
from .errors import (
    CodimensionUnsupported,
    CycleFitFailed,
    FillingNotFound,
    GridTopoError,
    NoFittingCycle,
    SearchBudgetExceeded,
)
from .filling import (
    Filling,
    closure_of,
    inside_region,
    min_filling,
    one_sided_min_cut,
)
from .metric import ambient_distance, ball, diameter

CellSet = FrozenSet[CubicalCell]

VARIANTS = ("ratio", "diff", "height", "height_ratio")

RegionFit = namedtuple("RegionFit", "region cycle complement")
Volume = namedtuple("Volume", "count measure")


@dataclass(frozen=True)
class ArcRegion:
    """A candidate peak or valley: a sub-half region of M and its boundary."""

    center: CubicalCell
    gamma: int
    region: CellSet
    cycle: Cycle
    complement: CellSet

    @property
    def N(self) -> int:
        return len(self.region)


@dataclass(frozen=True)
class CurvinessReport:
    center: CubicalCell
    gamma: int
    arc: ArcRegion
    filling: Filling
    r: Fraction
    r1: int
    r2_h: int
    r3: Fraction
    vol_arc: Volume
    vol_filling: Volume

    def measure(self, variant: str):
        if variant == "ratio":
            return self.r
        if variant == "diff":
            return self.r1
        if variant == "height":
            return self.r2_h
        if variant == "height_ratio":
            return self.r3
        raise ValueError(f"unknown variant {variant!r}")


def _region_connected(region: CellSet, m: int) -> bool:
    return len(components(region, m)) == 1


def fit_region(M: ManifoldComplex, ball_cells: CellSet, level: Optional[int] = None) -> RegionFit:
    """Grow a ball into a region whose boundary is one regular cycle.

    The ball is extended by canonically smallest complement cells until the
    topological boundary is a single closed regular (m-1)-manifold that
    separates M, or the region would exceed half of M.
    """
    def fail(msg):
        if level is not None:
            raise CycleFitFailed(level, msg)
        raise NoFittingCycle(msg)

    if not ball_cells:
        fail("empty region")
    region = set(ball_cells)
    half = len(M.cells) // 2
    if len(region) > half:
        fail(f"region of {len(region)} cells exceeds half of {len(M.cells)}")

    for _ in range(len(M.cells)):
        bd = region_boundary(region)
        if not bd:
            fail("region has empty boundary")
        cyc = Cycle(frozenset(bd), M.m)
        if cyc.is_valid() and _region_connected(frozenset(region), M.m):
            complement = M.cells - frozenset(region)
            if not complement or not _region_connected(complement, M.m):
                fail("boundary does not separate M into two components")
            return RegionFit(frozenset(region), cyc, complement)
        # Repair: absorb the smallest complement cell adjacent to the
        # current boundary; each absorption can only merge components or
        # remove a boundary defect.
        candidates = set()
        for c in sorted(M.cells - region):
            if any(f in bd for f in c.faces()):
                candidates.add(c)
        if not candidates or len(region) + 1 > half:
            fail("no regular separating cycle within half of M")
        region.add(min(candidates))
    fail("cycle repair did not converge")


def boundary_cycle_fit(
    M: ManifoldComplex,
    ball_cells: CellSet,
    center: Optional[CubicalCell] = None,
    gamma: int = 0,
) -> ArcRegion:
    """Fit the smallest separating cycle around a set of m-cells."""
    fit = fit_region(M, ball_cells)
    if center is None:
        center = min(ball_cells)
    return ArcRegion(center=center, gamma=gamma, region=fit.region, cycle=fit.cycle, complement=fit.complement)


def height(M: ManifoldComplex, arc: ArcRegion, filling: Filling) -> int:
    """Largest ambient vertex distance from arc cells to the filling."""
    f_verts = set()
    for c in filling.cells:
        f_verts.update(c.vertices())
    f_verts.update(v for c in filling.boundary.cells for v in c.vertices())
    h = 0
    for c in arc.region:
        d = min(ambient_distance(M.ambient, v, w) for v in c.vertices() for w in f_verts)
        h = max(h, d)
    return h


def _filling_span(ambient: AmbientSpace, filling: Filling) -> int:
    verts = set()
    for c in filling.cells:
        verts.update(c.vertices())
    verts.update(v for c in filling.boundary.cells for v in c.vertices())
    verts = sorted(verts)
    return max(
        (ambient_distance(ambient, u, v) for i, u in enumerate(verts) for v in verts[i + 1 :]),
        default=0,
    )


def minimum_filling_of_arc(
    M: ManifoldComplex,
    arc: ArcRegion,
    cap: int = 64,
    node_budget: int = 200_000,
) -> Filling:
    """True minimum filling of the arc boundary, M-intersections reported.

    The arc itself bounds the cycle, so the effective cap never exceeds the
    arc size; when the exact search runs out of nodes, the better one-sided
    cut stands in (marked non-minimal).
    """
    avoid = closure_of(M.cells) - closure_of(arc.cycle.cells)
    eff_cap = min(cap, len(arc.region))
    try:
        return min_filling(M.ambient, arc.cycle, avoid=avoid, cap=eff_cap, node_budget=node_budget)
    except SearchBudgetExceeded:
        cuts = []
        for side in ("inside", "outside"):
            got = one_sided_min_cut(M, arc.region, side=side)
            if got is not None:
                cuts.append((len(got[0]), side, got[0]))
        cuts.sort(key=lambda t: (t[0], t[1] != "inside"))
        if cuts and cuts[0][0] <= len(arc.region):
            return Filling(cells=cuts[0][2], boundary=arc.cycle, is_minimal=False)
        return Filling(cells=arc.region, boundary=arc.cycle, is_minimal=False,
                       avoid_hits=frozenset(arc.region))


def curviness(
    M: ManifoldComplex,
    arc: ArcRegion,
    variant: str = "ratio",
    filling: Optional[Filling] = None,
    cap: int = 64,
    node_budget: int = 200_000,
) -> CurvinessReport:
    """All four curviness measures of an arc against a minimum filling."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if filling is None:
        filling = minimum_filling_of_arc(M, arc, cap=cap, node_budget=node_budget)
    n_arc, n_fill = len(arc.region), filling.N
    h = height(M, arc, filling)
    span = _filling_span(M.ambient, filling)
    return CurvinessReport(
        center=arc.center,
        gamma=arc.gamma,
        arc=arc,
        filling=filling,
        r=Fraction(n_arc, n_fill),
        r1=n_arc - n_fill,
        r2_h=h,
        r3=Fraction(h, span) if span else Fraction(0),
        vol_arc=Volume(n_arc, n_arc),
        vol_filling=Volume(n_fill, n_fill),
    )


def replacement_filling(
    M: ManifoldComplex,
    arc: ArcRegion,
    cap: int = 64,
    node_budget: int = 200_000,
    exact_threshold: int = 8,
    inside: Optional[CellSet] = None,
) -> Optional[Filling]:
    """Smallest filling of the arc boundary that avoids M outside it.

    Only fillings strictly smaller than both sides of the split are
    useful, so the size cap is tightened accordingly.  Curves use an exact
    excluded-path search; surfaces try the exact search when the instance
    is small and otherwise take the better one-sided minimum cut.
    """
    eff_cap = min(cap, len(arc.region) - 1, len(arc.complement) - 1)
    if eff_cap < 1:
        return None
    exclude = closure_of(M.cells) - closure_of(arc.cycle.cells)
    if M.m == 1:
        try:
            return min_filling(M.ambient, arc.cycle, exclude=exclude, cap=eff_cap, node_budget=node_budget)
        except (FillingNotFound, SearchBudgetExceeded):
            return None

    cuts = []
    for side in ("inside", "outside"):
        got = one_sided_min_cut(M, arc.region, inside=inside, side=side)
        if got is not None and len(got[0]) <= eff_cap:
            cuts.append((len(got[0]), side, got[0]))
    cuts.sort(key=lambda t: (t[0], t[1] != "inside"))
    best_cut = cuts[0] if cuts else None

    exact_cap = min(eff_cap, best_cut[0] if best_cut else exact_threshold)
    if exact_cap <= exact_threshold:
        try:
            return min_filling(M.ambient, arc.cycle, exclude=exclude, cap=exact_cap, node_budget=node_budget)
        except (FillingNotFound, SearchBudgetExceeded):
            pass
    if best_cut is None:
        return None
    return Filling(cells=best_cut[2], boundary=arc.cycle, is_minimal=False)


def candidate_arcs(M: ManifoldComplex, gamma: int) -> List[ArcRegion]:
    """Deduplicated fitted arcs from balls around every closure cell."""
    half = len(M.cells) // 2
    seen: Dict[CellSet, ArcRegion] = {}
    centers: List[CubicalCell] = []
    for d in range(0, M.m + 1):
        centers.extend(sorted(M.closure.get(d, frozenset())))
    for center in centers:
        cells = ball(M, center, gamma)
        if not cells or len(cells) > half:
            continue
        try:
            fit = fit_region(M, cells)
        except GridTopoError:
            continue
        if fit.region not in seen:
            seen[fit.region] = ArcRegion(
                center=center, gamma=gamma, region=fit.region, cycle=fit.cycle, complement=fit.complement
            )
    return sorted(seen.values(), key=lambda a: (a.center, a.gamma))


def valid_reports(
    M: ManifoldComplex,
    gamma: int,
    variant: str = "ratio",
    cap: int = 64,
    node_budget: int = 200_000,
) -> List[CurvinessReport]:
    """Curviness reports for every arc admitting a reducing filling.

    An arc enters the valid set only when a filling avoiding M exists and
    its volume is smaller than both components of the split.
    """
    inside = inside_region(M) if M.m == M.ambient.n - 1 else None
    out = []
    for arc in candidate_arcs(M, gamma):
        filling = replacement_filling(M, arc, cap=cap, node_budget=node_budget, inside=inside)
        if filling is None:
            continue
        if filling.N >= min(len(arc.region), len(arc.complement)):
            continue
        out.append(curviness(M, arc, variant=variant, filling=filling))
    out.sort(key=lambda r: r.center)
    out.sort(key=lambda r: r.measure(variant), reverse=True)
    return out


def select_peak(
    M: ManifoldComplex,
    gamma: int,
    variant: str = "ratio",
    cap: int = 64,
    node_budget: int = 200_000,
) -> Optional[CurvinessReport]:
    """Best report at this radius, or None when the valid set is empty."""
    reports = valid_reports(M, gamma, variant=variant, cap=cap, node_budget=node_budget)
    return reports[0] if reports else None


def radius_schedule(M: ManifoldComplex) -> Iterator[int]:
    """Radii to scan: a quarter of the diameter, then halvings down to 1."""
    d, _ = diameter(M)
    return radius_schedule_from(d)


def radius_schedule_from(d: int) -> Iterator[int]:
    g = max(1, d // 4)
    yield g
    while g > 1:
        g //= 2
        yield g


def arc_sign(M: ManifoldComplex, arc: ArcRegion, filling: Filling) -> str:
    """Classify an arc as peak, valley, or flat by its filling side.

    Works in codimension one only, where the bounded component of the
    ambient is well defined; the filling sits inside it for a peak and
    outside for a valley.
    """
    if M.ambient.n != M.m + 1:
        raise CodimensionUnsupported(f"m={M.m} in ambient n={M.ambient.n}")
    if height(M, arc, filling) == 0:
        return "flat"
    inside = inside_region(M)
    for c in sorted(filling.cells):
        if c in M.cells:
            continue
        carriers = list(M.ambient.top_cells_containing(c))
        if any(t in inside for t in carriers):
            return "peak"
        return "valley"
    return "flat"
