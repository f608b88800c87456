"""Elementary moves, gradual variation, interpolation, arc replacement.

A deformation is recorded as a sequence of elementary moves, each flipping
the state across one (m+1)-cell: the new state is the symmetric difference
of the old state with the flip cell's boundary.  Replacing an arc by a
filling decomposes into one flip per cell of the region enclosed between
them; the interpolation search looks for an order of those flips in which
every intermediate state is still a valid closed manifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .cells import AmbientSpace, CubicalCell
from .complexes import ManifoldComplex, validate
from .curviness import ArcRegion
from .errors import InterpolationFailed, ReplacementNotManifold, ReplayMismatch
from .filling import Filling, enclosed_cells

CellSet = FrozenSet[CubicalCell]


@dataclass(frozen=True)
class ElementaryMove:
    """One flip: `after` is `before` XOR the flip cell's boundary."""

    flip_cell: CubicalCell
    before: CellSet
    after: CellSet


def apply_flip(state: CellSet, flip_cell: CubicalCell) -> CellSet:
    """Flip a state across an (m+1)-cell, refusing detached moves."""
    bd = frozenset(flip_cell.faces())
    if not (state & bd):
        raise ValueError(f"flip {flip_cell} does not touch the state")
    if not (bd - state):
        raise ValueError(f"flip {flip_cell} would detach the state")
    return state.symmetric_difference(bd)


def is_gradually_varied(ambient: AmbientSpace, A: CellSet, B: CellSet) -> bool:
    """True when A turns into B by a set of independent single flips.

    Independent means the flip boundaries are pairwise disjoint, so the
    symmetric difference of the states must split exactly into boundaries
    of (m+1)-cells.
    """
    diff = A.symmetric_difference(B)
    if not diff:
        return True
    m = next(iter(diff)).dim
    candidates = set()
    for e in diff:
        for c in e.cofaces(range(ambient.n)):
            if c.dim == m + 1 and ambient.contains_cell(c):
                bd = frozenset(c.faces())
                if bd <= diff and (bd & A) and (bd - A):
                    candidates.add(c)

    def cover(remaining: CellSet) -> bool:
        if not remaining:
            return True
        e = min(remaining)
        for c in sorted(candidates):
            bd = frozenset(c.faces())
            if e in bd and bd <= remaining:
                if cover(remaining - bd):
                    return True
        return False

    return cover(diff)


def _state_valid(ambient: AmbientSpace, m: int, state: CellSet) -> bool:
    M = ManifoldComplex(ambient, m, state)
    return validate(M).ok


def interpolate(
    M: ManifoldComplex,
    arc: ArcRegion,
    filling: Filling,
    move_cap: int,
) -> List[ElementaryMove]:
    """Order of single flips deforming the arc onto the filling.

    The flips are exactly the top cells enclosed between arc and filling;
    the search peels them starting from the cells farthest from the
    filling, backtracking whenever an intermediate state stops being a
    valid closed manifold.
    """
    X, F = arc.region, filling.cells
    diff = X.symmetric_difference(F)
    if not diff:
        return []
    region = enclosed_cells(M.ambient, diff)
    if not region:
        raise InterpolationFailed("difference surface bounds no region")
    if len(region) > move_cap:
        raise InterpolationFailed(f"{len(region)} flips exceed move cap {move_cap}")

    f_verts = set()
    for c in F:
        f_verts.update(c.vertices())

    def fdist(w: CubicalCell) -> int:
        return min(
            sum(abs(a - b) for a, b in zip(v, u)) for v in w.vertices() for u in f_verts
        )

    order = sorted(region, key=lambda w: (-fdist(w), w))
    start = M.cells
    budget = max(1000, 40 * len(region))
    nodes = 0
    dead: set = set()

    def dfs(state: CellSet, flipped: FrozenSet[CubicalCell], moves: List[ElementaryMove]) -> bool:
        nonlocal nodes
        if len(flipped) == len(region):
            return True
        if flipped in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise InterpolationFailed(f"search budget exhausted after {nodes} nodes")
        for w in order:
            if w in flipped:
                continue
            bd = frozenset(w.faces())
            if not (state & bd) or not (bd - state):
                continue
            new_state = state.symmetric_difference(bd)
            if not _state_valid(M.ambient, M.m, new_state):
                continue
            moves.append(ElementaryMove(flip_cell=w, before=state, after=new_state))
            if dfs(new_state, flipped | {w}, moves):
                return True
            moves.pop()
        dead.add(flipped)
        return False

    moves: List[ElementaryMove] = []
    if not dfs(start, frozenset(), moves):
        raise InterpolationFailed("no valid flip order found")
    return moves


def replace_arc(M: ManifoldComplex, arc: ArcRegion, filling: Filling) -> ManifoldComplex:
    """Swap an arc for a filling of the same boundary, validating the result."""
    if filling.boundary.cells != arc.cycle.cells:
        raise ReplacementNotManifold("filling boundary differs from arc boundary")
    if filling.N >= len(arc.region):
        raise ReplacementNotManifold("replacement does not reduce the cell count")
    new = M.replace(arc.region, filling.cells)
    report = validate(new)
    if not report.ok:
        raise ReplacementNotManifold(f"replacement invalid: {report}")
    return new


# ---------------------------------------------------------------------------
# Trace records.


@dataclass(frozen=True)
class MoveStep:
    flip_cell: CubicalCell

    kind = "move"


@dataclass(frozen=True)
class ReplaceStep:
    center: CubicalCell
    gamma: int
    removed: Tuple[CubicalCell, ...]
    added: Tuple[CubicalCell, ...]
    sign: str
    lofted: Tuple[Tuple[int, int, int, bool], ...] = ()

    kind = "replace"


@dataclass(frozen=True)
class SplitStep:
    cycle_cells: Tuple[CubicalCell, ...]
    removed: Tuple[CubicalCell, ...]
    added: Tuple[CubicalCell, ...]
    child_id: int
    level: Optional[int] = None

    kind = "split"


@dataclass(frozen=True)
class TerminalStep:
    center: Optional[CubicalCell]
    status: str

    kind = "terminal"


Step = object


@dataclass(frozen=True)
class DeformationTrace:
    """Ordered record of steps taking `initial` to `final`."""

    ambient: AmbientSpace
    m: int
    initial: Tuple[CubicalCell, ...]
    steps: Tuple[Step, ...]
    final: Tuple[CubicalCell, ...]

    def states(self) -> List[CellSet]:
        """State after the initial complex and after every step."""
        state = frozenset(self.initial)
        out = [state]
        for step in self.steps:
            state = apply_step(state, step)
            out.append(state)
        return out


def apply_step(state: CellSet, step: Step) -> CellSet:
    if isinstance(step, MoveStep):
        try:
            return apply_flip(state, step.flip_cell)
        except ValueError as err:
            raise ReplayMismatch(str(err))
    if isinstance(step, ReplaceStep):
        if state & frozenset(step.removed):
            raise ReplayMismatch(f"replace marker: removed cells still present")
        if not frozenset(step.added) <= state:
            raise ReplayMismatch(f"replace marker: added cells missing")
        return state
    if isinstance(step, SplitStep):
        removed = frozenset(step.removed)
        if not removed <= state:
            raise ReplayMismatch("split: arc cells not present")
        return (state - removed) | frozenset(step.added)
    if isinstance(step, TerminalStep):
        return state
    raise ReplayMismatch(f"unknown step {step!r}")


def replay(trace: DeformationTrace) -> ManifoldComplex:
    """Re-run the trace from the initial state, checking the final state."""
    state = frozenset(trace.initial)
    for step in trace.steps:
        state = apply_step(state, step)
    if state != frozenset(trace.final):
        raise ReplayMismatch("replayed final state differs from recorded final")
    return ManifoldComplex(trace.ambient, trace.m, state)
