"""Fixture files and trace serialization.

Fixture grammar, one statement per line, `#` comments allowed:

    ambient <n> <lo:hi> ... <lo:hi>
    cell <b0> ... <b_{n-1}> axes <a1> ... <am>

Cells are written in canonical order on save, so load/save round-trips are
stable.  Traces serialize to a line-per-step text form and to a JSON dump
that carries enough structure to replay and render.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Optional, Union

from .cells import AmbientSpace, CubicalCell, build_ambient
from .complexes import ManifoldComplex, validate
from .deform import (
    DeformationTrace,
    MoveStep,
    ReplaceStep,
    SplitStep,
    TerminalStep,
)
from .errors import ParseError, ValidationFailed


def cell_token(cell: CubicalCell) -> str:
    b = ",".join(str(x) for x in cell.base)
    a = ",".join(str(x) for x in cell.axes)
    return f"{b}|{a}"


def parse_cell_token(tok: str) -> CubicalCell:
    b, _, a = tok.partition("|")
    base = tuple(int(x) for x in b.split(","))
    axes = tuple(int(x) for x in a.split(",")) if a else ()
    return CubicalCell.make(base, axes)


def load_fixture(path: Union[str, Path], require_valid: bool = True) -> ManifoldComplex:
    """Parse a fixture file into a validated complex."""
    path = Path(path)
    ambient: Optional[AmbientSpace] = None
    cells: List[CubicalCell] = []
    seen = set()
    m: Optional[int] = None
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "ambient":
            if ambient is not None:
                raise ParseError(line_no, "duplicate ambient header")
            try:
                n = int(parts[1])
                extent = []
                for tok in parts[2 : 2 + n]:
                    lo, hi = tok.split(":")
                    extent.append((int(lo), int(hi)))
                if len(extent) != n:
                    raise ValueError
                ambient = build_ambient(n, extent)
            except (ValueError, IndexError):
                raise ParseError(line_no, f"bad ambient header {line!r}")
        elif parts[0] == "cell":
            if ambient is None:
                raise ParseError(line_no, "cell line before ambient header")
            try:
                idx = parts.index("axes")
                base = tuple(int(x) for x in parts[1:idx])
                axes = tuple(int(x) for x in parts[idx + 1 :])
                cell = CubicalCell.make(base, axes)
            except (ValueError, IndexError):
                raise ParseError(line_no, f"bad cell line {line!r}")
            if len(base) != ambient.n:
                raise ParseError(line_no, f"cell has {len(base)} coordinates, ambient has {ambient.n}")
            if cell in seen:
                raise ParseError(line_no, f"duplicate cell {cell!r}")
            if not ambient.contains_cell(cell):
                raise ParseError(line_no, f"cell {cell!r} outside ambient extent")
            if m is None:
                m = cell.dim
            elif cell.dim != m:
                raise ParseError(line_no, f"cell dimension {cell.dim} differs from {m}")
            seen.add(cell)
            cells.append(cell)
        else:
            raise ParseError(line_no, f"unknown statement {parts[0]!r}")
    if ambient is None:
        raise ParseError(0, "missing ambient header")
    if not cells:
        raise ParseError(0, "fixture has no cells")
    M = ManifoldComplex.make(ambient, m, cells)
    if require_valid:
        report = validate(M)
        if not report.ok:
            raise ValidationFailed(report)
    return M


def save_fixture(M: ManifoldComplex, path: Union[str, Path]) -> None:
    path = Path(path)
    lines = [
        "ambient "
        + str(M.ambient.n)
        + " "
        + " ".join(f"{lo}:{hi}" for lo, hi in M.ambient.extent)
    ]
    for c in M.canonical_cells():
        base = " ".join(str(x) for x in c.base)
        axes = " ".join(str(x) for x in c.axes)
        lines.append(f"cell {base} axes {axes}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def trace_lines(trace: DeformationTrace) -> List[str]:
    """One human-readable record per step."""
    out = []
    for step in trace.steps:
        if isinstance(step, MoveStep):
            out.append(f"move flip={cell_token(step.flip_cell)}")
        elif isinstance(step, ReplaceStep):
            out.append(
                f"replace x={cell_token(step.center)} γ={step.gamma} "
                f"removed={len(step.removed)} added={len(step.added)}"
            )
        elif isinstance(step, SplitStep):
            cyc = ",".join(cell_token(c) for c in step.cycle_cells)
            out.append(f"split cycle={cyc}")
        elif isinstance(step, TerminalStep):
            center = cell_token(step.center) if step.center is not None else "-"
            out.append(f"terminal center={center}")
        else:
            raise ValueError(f"unknown step {step!r}")
    return out


def _step_to_json(step) -> Dict:
    if isinstance(step, MoveStep):
        return {"kind": "move", "flip": cell_token(step.flip_cell)}
    if isinstance(step, ReplaceStep):
        return {
            "kind": "replace",
            "center": cell_token(step.center),
            "gamma": step.gamma,
            "removed": [cell_token(c) for c in step.removed],
            "added": [cell_token(c) for c in step.added],
            "sign": step.sign,
            "lofted": [list(t) for t in step.lofted],
        }
    if isinstance(step, SplitStep):
        return {
            "kind": "split",
            "cycle": [cell_token(c) for c in step.cycle_cells],
            "removed": [cell_token(c) for c in step.removed],
            "added": [cell_token(c) for c in step.added],
            "child": step.child_id,
            "level": step.level,
        }
    if isinstance(step, TerminalStep):
        return {
            "kind": "terminal",
            "center": cell_token(step.center) if step.center is not None else None,
            "status": step.status,
        }
    raise ValueError(f"unknown step {step!r}")


def _step_from_json(obj: Dict):
    kind = obj["kind"]
    if kind == "move":
        return MoveStep(flip_cell=parse_cell_token(obj["flip"]))
    if kind == "replace":
        return ReplaceStep(
            center=parse_cell_token(obj["center"]),
            gamma=obj["gamma"],
            removed=tuple(parse_cell_token(t) for t in obj["removed"]),
            added=tuple(parse_cell_token(t) for t in obj["added"]),
            sign=obj["sign"],
            lofted=tuple(tuple(t) for t in obj.get("lofted", [])),
        )
    if kind == "split":
        return SplitStep(
            cycle_cells=tuple(parse_cell_token(t) for t in obj["cycle"]),
            removed=tuple(parse_cell_token(t) for t in obj["removed"]),
            added=tuple(parse_cell_token(t) for t in obj["added"]),
            child_id=obj["child"],
            level=obj.get("level"),
        )
    if kind == "terminal":
        center = obj.get("center")
        return TerminalStep(
            center=parse_cell_token(center) if center else None, status=obj["status"]
        )
    raise ValueError(f"unknown step kind {kind!r}")


def trace_to_json(trace: DeformationTrace, children: Optional[Dict[int, DeformationTrace]] = None) -> Dict:
    doc = {
        "format": "gridtopo-trace",
        "version": 1,
        "ambient": {"n": trace.ambient.n, "extent": [list(e) for e in trace.ambient.extent]},
        "m": trace.m,
        "initial": [cell_token(c) for c in trace.initial],
        "steps": [_step_to_json(s) for s in trace.steps],
        "final": [cell_token(c) for c in trace.final],
    }
    if children:
        doc["children"] = {
            str(k): trace_to_json(v) for k, v in sorted(children.items())
        }
    return doc


def trace_from_json(doc: Dict) -> DeformationTrace:
    ambient = build_ambient(doc["ambient"]["n"], [tuple(e) for e in doc["ambient"]["extent"]])
    return DeformationTrace(
        ambient=ambient,
        m=doc["m"],
        initial=tuple(parse_cell_token(t) for t in doc["initial"]),
        steps=tuple(_step_from_json(s) for s in doc["steps"]),
        final=tuple(parse_cell_token(t) for t in doc["final"]),
    )


def save_trace(trace: DeformationTrace, path: Union[str, Path], children=None) -> None:
    Path(path).write_text(
        json.dumps(trace_to_json(trace, children), indent=1, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_trace(path: Union[str, Path]) -> DeformationTrace:
    return trace_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
