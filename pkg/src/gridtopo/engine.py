"""Contraction engine: peak replacement, split-and-recurse, termination.

Each iteration scans radii for the best reducible arc, deforms it onto its
filling through elementary moves, and repeats.  When the lofted fillings
of a selected arc run through the arc itself, the region is cut out
instead and contracted recursively as a separate closed manifold.  The run
terminates at an irreducible sphere, or with obstruction evidence when
nothing reduces and a probe finds a cycle whose minimum filling threads
the manifold, which is the observable signature of a handle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .cells import CubicalCell
from .complexes import Cycle, ManifoldComplex, components, region_boundary, validate
from .curviness import (
    CurvinessReport,
    arc_sign,
    radius_schedule_from,
    valid_reports,
)
from .deform import (
    DeformationTrace,
    MoveStep,
    ReplaceStep,
    SplitStep,
    TerminalStep,
    interpolate,
    replace_arc,
)
from .errors import (
    CodimensionUnsupported,
    CycleFitFailed,
    FillingNotFound,
    InterpolationFailed,
    NotSeparating,
    ReplacementNotManifold,
    SearchBudgetExceeded,
    ValidationFailed,
)
from .filling import Filling, closure_of, jordan_split, lofted, min_filling
from .metric import ambient_distance, ball, diameter


@dataclass(frozen=True)
class ContractionConfig:
    variant: str = "ratio"
    filling_cap: int = 64
    move_cap: Optional[int] = None  # None: 10 * arc size
    max_iterations: int = 10_000
    radius_policy: str = "top_down"
    node_budget: int = 200_000
    probe_budget: int = 20_000


@dataclass(frozen=True)
class ObstructionEvidence:
    kind: str
    center: CubicalCell
    gamma: int
    level: Optional[int]
    cells: Tuple[CubicalCell, ...]


@dataclass(frozen=True)
class IrreducibleSphere:
    witness: CubicalCell

    status = "irreducible_sphere"


@dataclass(frozen=True)
class NotSimplyConnectedObstruction:
    evidence: Tuple[ObstructionEvidence, ...]

    status = "obstruction"


@dataclass(frozen=True)
class Exhausted:
    reason: str

    status = "exhausted"


@dataclass(frozen=True)
class ContractionNode:
    node_id: int
    initial: ManifoldComplex
    final: ManifoldComplex
    trace: DeformationTrace
    terminal: object
    glue: Optional[Tuple[Cycle, Filling]]
    children: Tuple["ContractionNode", ...]


@dataclass(frozen=True)
class ContractionResult:
    root: ContractionNode
    nodes: Tuple[ContractionNode, ...]

    @property
    def exit_code(self) -> int:
        status = self.root.terminal.status
        if status == "irreducible_sphere":
            return 0
        if status == "obstruction":
            return 2
        return 3

    def leaves(self) -> List[ContractionNode]:
        return [n for n in self.nodes if not n.children]


def is_irreducible_sphere(M: ManifoldComplex) -> Optional[CubicalCell]:
    """Witness cell all m-cells of M touch, if one exists.

    A manifold equal to the boundary of one (m+1)-cell, or small enough
    that a single ambient cell meets every m-cell, is as contracted as the
    grid allows.
    """
    verts = sorted(M.vertices)
    n = M.ambient.n
    lo = [min(v[i] for v in verts) for i in range(n)]
    hi = [max(v[i] for v in verts) for i in range(n)]
    if any(h - l > 3 for l, h in zip(lo, hi)):
        return None
    cells_sorted = sorted(M.cells)
    candidates: List[CubicalCell] = []
    for dim in range(0, n + 1):
        for axes in itertools.combinations(range(n), dim):
            ranges = []
            for i in range(n):
                top = 1 if i in axes else 0
                ranges.append(range(lo[i] - 1, hi[i] + 1 - top + 1))
            for base in itertools.product(*ranges):
                o = CubicalCell(dim, tuple(base), axes)
                if not M.ambient.contains_cell(o):
                    continue
                if all(c.touches(o) for c in cells_sorted):
                    candidates.append(o)
        if candidates:
            return min(candidates)
    return None


def diameter_sphere_check(M: ManifoldComplex) -> Tuple[bool, int, Tuple]:
    """Roundness diagnostic: every vertex nearly attains the diameter.

    Distances here are ambient distances between vertices of M; returns
    (flag, diameter, failing vertices with their best distance).
    """
    verts = sorted(M.vertices)
    best_of = {}
    D = 0
    for v in verts:
        b = max(ambient_distance(M.ambient, v, w) for w in verts if w != v)
        best_of[v] = b
        D = max(D, b)
    failures = tuple((v, b) for v, b in sorted(best_of.items()) if b < D - 1)
    return (not failures, D, failures)


def radius_sweep(M: ManifoldComplex, policy: str = "top_down") -> List[int]:
    """Radii in scan order: the halving schedule, then the remaining radii."""
    d, _ = diameter(M)
    gmax = max(1, d // 2)
    if policy == "bottom_up":
        return list(range(1, gmax + 1))
    sched = list(radius_schedule_from(d))
    rest = [g for g in range(gmax, 0, -1) if g not in set(sched)]
    return sched + rest


def probe_obstruction(M: ManifoldComplex, cfg: ContractionConfig) -> Optional[ObstructionEvidence]:
    """Search for a cycle whose minimum filling threads the manifold.

    Around every center and radius, boundary rings of balls are tested:
    a ring that fails to separate M, or whose minimum filling is smaller
    than the region yet passes through M, is reported as evidence.
    """
    d, _ = diameter(M)
    gmax = max(1, d // 2)
    m_closure = closure_of(M.cells)
    centers: List[CubicalCell] = []
    for dim in range(0, M.m + 1):
        centers.extend(sorted(M.closure.get(dim, frozenset())))
    for center in centers:
        for g in range(1, gmax + 1):
            region = ball(M, center, g)
            if not region or len(region) == len(M.cells):
                continue
            bd = region_boundary(region)
            if not bd:
                continue
            for comp in components(bd, M.m - 1):
                cyc = Cycle(frozenset(comp), M.m)
                if not cyc.is_valid():
                    continue
                avoid = m_closure - closure_of(cyc.cells)
                try:
                    small, _large = jordan_split(M, cyc)
                    cap = min(12, len(small))
                    if cap < 1:
                        continue
                    filling = min_filling(
                        M.ambient, cyc, avoid=avoid, cap=cap, node_budget=cfg.probe_budget
                    )
                    hits = filling.cells & M.cells
                    if filling.N < len(small) and hits:
                        return ObstructionEvidence(
                            kind="lofted_intersection",
                            center=center,
                            gamma=g,
                            level=g,
                            cells=tuple(sorted(hits)),
                        )
                except NotSeparating:
                    try:
                        filling = min_filling(
                            M.ambient, cyc, avoid=avoid, cap=12, node_budget=cfg.probe_budget
                        )
                    except (FillingNotFound, SearchBudgetExceeded):
                        return ObstructionEvidence(
                            kind="non_separating",
                            center=center,
                            gamma=g,
                            level=g,
                            cells=cyc.canonical_cells(),
                        )
                    hits = tuple(sorted(filling.avoid_hits))
                    return ObstructionEvidence(
                        kind="lofted_intersection" if hits else "non_separating",
                        center=center,
                        gamma=g,
                        level=g,
                        cells=hits or cyc.canonical_cells(),
                    )
                except (FillingNotFound, SearchBudgetExceeded):
                    continue
    return None


def _try_apply(M, report: CurvinessReport, cfg, chi, steps, split_out, counter, nodes):
    """Attempt one replacement; returns the new manifold or None."""
    arc, filling = report.arc, report.filling
    try:
        new_M = replace_arc(M, arc, filling)
    except ReplacementNotManifold:
        return None
    if new_M.euler_characteristic() != chi:
        return None
    try:
        sign = arc_sign(M, arc, filling)
    except CodimensionUnsupported:
        sign = "unknown"

    obstructed = False
    level = None
    loft_summary: Tuple = ()
    try:
        seq = lofted(
            M,
            arc.center,
            report.gamma,
            cap=cfg.filling_cap,
            arc_cells=arc.region,
            node_budget=cfg.node_budget,
        )
        loft_summary = tuple(
            (lv.level, len(lv.circle.cells), lv.filling.N, lv.meets_arc) for lv in seq.levels
        )
        for lv in seq.levels:
            if lv.meets_arc:
                obstructed, level = True, lv.level
                break
    except CycleFitFailed as err:
        obstructed, level = True, err.level
    except (FillingNotFound, SearchBudgetExceeded):
        obstructed = True

    if not obstructed:
        move_cap = cfg.move_cap if cfg.move_cap is not None else 10 * len(arc.region)
        try:
            moves = interpolate(M, arc, filling, move_cap)
        except InterpolationFailed:
            moves = None
        if moves is not None:
            for mv in moves:
                steps.append(MoveStep(flip_cell=mv.flip_cell))
            steps.append(
                ReplaceStep(
                    center=arc.center,
                    gamma=arc.gamma,
                    removed=tuple(sorted(arc.region - filling.cells)),
                    added=tuple(sorted(filling.cells - arc.region)),
                    sign=sign,
                    lofted=loft_summary,
                )
            )
            return new_M
        obstructed = True

    # Split branch: cut the arc out, close it with the filling, recurse.
    child_cells = arc.region | filling.cells
    child = ManifoldComplex(M.ambient, M.m, child_cells)
    if not validate(child).ok:
        return None
    child_node = _contract_node(child, cfg, counter, nodes, glue=(arc.cycle, filling))
    split_out.append(
        (
            SplitStep(
                cycle_cells=arc.cycle.canonical_cells(),
                removed=tuple(sorted(arc.region - filling.cells)),
                added=tuple(sorted(filling.cells - arc.region)),
                child_id=child_node.node_id,
                level=level,
            ),
            child_node,
        )
    )
    steps.append(split_out[-1][0])
    return new_M


def _contract_node(M, cfg, counter, nodes, glue):
    node_id = next(counter)
    initial = M
    steps: List = []
    children: List[ContractionNode] = []
    terminal = None
    for _ in range(cfg.max_iterations):
        witness = is_irreducible_sphere(M)
        if witness is not None:
            steps.append(TerminalStep(center=witness, status="irreducible_sphere"))
            terminal = IrreducibleSphere(witness=witness)
            break
        chi = M.euler_characteristic()
        applied = False
        for gamma in radius_sweep(M, cfg.radius_policy):
            reports = valid_reports(
                M, gamma, variant=cfg.variant, cap=cfg.filling_cap, node_budget=cfg.node_budget
            )
            for report in reports:
                split_out: List = []
                new_M = _try_apply(M, report, cfg, chi, steps, split_out, counter, nodes)
                if new_M is not None:
                    children.extend(node for _, node in split_out)
                    M = new_M
                    applied = True
                    break
            if applied:
                break
        if applied:
            continue
        probe = probe_obstruction(M, cfg)
        if probe is not None:
            terminal = NotSimplyConnectedObstruction(evidence=(probe,))
            steps.append(TerminalStep(center=None, status="obstruction"))
        else:
            terminal = Exhausted(reason="no reducible arc at any radius")
            steps.append(TerminalStep(center=None, status="exhausted"))
        break
    else:
        terminal = Exhausted(reason="iteration cap reached")
        steps.append(TerminalStep(center=None, status="exhausted"))

    trace = DeformationTrace(
        ambient=initial.ambient,
        m=initial.m,
        initial=initial.canonical_cells(),
        steps=tuple(steps),
        final=M.canonical_cells(),
    )
    node = ContractionNode(
        node_id=node_id,
        initial=initial,
        final=M,
        trace=trace,
        terminal=terminal,
        glue=glue,
        children=tuple(children),
    )
    nodes.append(node)
    return node


def contract(M: ManifoldComplex, cfg: ContractionConfig = ContractionConfig()) -> ContractionResult:
    """Contract a closed manifold, returning the full split tree."""
    report = validate(M)
    if not report.ok:
        raise ValidationFailed(report)
    counter = itertools.count()
    nodes: List[ContractionNode] = []
    root = _contract_node(M, cfg, counter, nodes, glue=None)
    return ContractionResult(root=root, nodes=tuple(nodes))
