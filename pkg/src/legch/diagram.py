"""Resolve a plat front word into a based, oriented Lagrangian-style diagram.

The diagram is a 4-valent planar map.  Front crossings become vertices as is;
each right cusp becomes a vertex whose east-side stubs are joined by a short
cap edge, forming the usual loop.  Left cusps are smooth (no vertex).

Alongside the map we compute
  * chord data at every vertex: the top sheet of the double point is the
    strand of lesser slope, the one entering from the upper left.  In the
    drawn map that strand runs along the descending (NW to SE) line, at
    crossings and cap loops alike.  Both chord endpoints are therefore read
    off just left of the vertex: upper piece over lower piece,
  * a knot orientation (the lower strand of the first left cusp runs east),
  * Reeb signs per quadrant.  A corner of a face is positive exactly when
    the counterclockwise boundary jumps up the chord there: it arrives along
    the low sheet and departs along the top sheet, which happens at the east
    and west quadrants,
  * an exact rational action for every chord via a small linear program, so
    that every bounded face has positive signed corner area.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .front import FrontWord, TopologyError

SLOTS = ("NE", "NW", "SW", "SE")  # counterclockwise around a vertex
THROUGH = {"NW": "SE", "SE": "NW", "SW": "NE", "NE": "SW"}
CW_NEXT = {"NE": "SE", "SE": "SW", "SW": "NW", "NW": "NE"}
# quadrant swept when a face arrives at slot s and departs at CW_NEXT[s]
QUAD_AT = {"NE": "E", "SE": "S", "SW": "W", "NW": "N"}
QUADS = ("E", "N", "W", "S")  # counterclockwise
# quadrants flanking a slot
FLANK = {
    "NE": ("N", "E"),
    "NW": ("N", "W"),
    "SW": ("S", "W"),
    "SE": ("S", "E"),
}
QUAD_BETWEEN = {
    frozenset(("NE", "NW")): "N",
    frozenset(("NW", "SW")): "W",
    frozenset(("SW", "SE")): "S",
    frozenset(("SE", "NE")): "E",
}
# departure slot of the corner in a given quadrant (boundary leaves along it)
QUAD_OUT_SLOT = {"E": "SE", "S": "SW", "W": "NW", "N": "NE"}
QUAD_IN_SLOT = {"E": "NE", "S": "SE", "W": "SW", "N": "NW"}


class RealizationError(RuntimeError):
    """Internal invariant violation while realizing chord actions."""


def piece_key(gap: int, pos: int, half: str | None = None) -> str:
    base = f"g{gap}.p{pos}"
    return base if half is None else f"{base}.{half}"


@dataclass
class Crossing:
    cid: int
    name: str
    kind: str  # 'x' or 'r'
    event: int
    pos: int
    pair: tuple[int, int]  # strand ids, upper-left first
    slot_edge: dict = field(default_factory=dict)  # slot -> eid
    transits: dict = field(default_factory=dict)  # 'desc'/'asc' -> (in, out)
    over_line: str = "desc"  # top sheet runs NW to SE
    upper_piece: str = ""
    lower_piece: str = ""
    upper_strand: int = -1
    lower_strand: int = -1


@dataclass
class Edge:
    eid: int
    ends: list  # [(cid, slot), (cid, slot)]
    kind: str  # 'plain' | 'chain' | 'cap'
    lcusp_event: int | None
    path: list  # [('cell', gap, pos, dir)] + [('lcusp', event)], end0 -> end1
    head_end: int = -1  # knot runs toward ends[head_end]
    has_bp: bool = False


@dataclass
class Face:
    fid: int
    items: list  # [('edge', eid, to_end) | ('corner', cid, quad)] in order
    corners: list
    unbounded: bool = False
    area: Fraction | None = None


@dataclass
class StrandInfo:
    sid: int
    birth_event: int
    birth_upper: bool
    death_event: int = -1
    death_upper: bool = False


class LagrangianDiagram:
    def __init__(self, front: FrontWord):
        self.front = front
        self.crossings: list[Crossing] = []
        self.edges: list[Edge] = []
        self.faces: list[Face] = []
        self.strands: dict[int, StrandInfo] = {}
        self.gap_layout: list[tuple[int, ...]] = []  # strand ids per gap
        self.bp_edge: int = -1
        self.bp_cell: tuple[int, int] = (-1, -1)
        self.cycle: list[tuple[int, int]] = []  # (eid, head_end) in knot order
        self.actions: dict[str, Fraction] = {}
        self.quadrant_sign: dict[tuple[int, str], int] = {}
        self.directed_face: dict[tuple[int, int], int] = {}

    # -- convenience ---------------------------------------------------
    def crossing_by_name(self, name: str) -> Crossing:
        for c in self.crossings:
            if c.name == name:
                return c
        raise KeyError(name)

    def chord_names(self) -> list[str]:
        return [c.name for c in self.crossings]

    def corner_face(self, cid: int, quad: str) -> int:
        return self._corner_face[(cid, quad)]

    # -- serialization --------------------------------------------------
    def to_dict(self) -> dict:
        from .util import frac_to_str

        crossings = []
        for c in self.crossings:
            crossings.append(
                {
                    "name": c.name,
                    "kind": c.kind,
                    "event": c.event,
                    "pos": c.pos,
                    "over_line": c.over_line,
                    "slot_edges": {s: c.slot_edge[s] for s in SLOTS},
                    "quadrant_signs": {
                        q: self.quadrant_sign[(c.cid, q)] for q in QUADS
                    },
                    "quadrant_labels": relabel_quadrants(self, c.cid),
                }
            )
        edges = []
        for e in self.edges:
            edges.append(
                {
                    "id": e.eid,
                    "ends": [[cid, slot] for cid, slot in e.ends],
                    "kind": e.kind,
                    "head_end": e.head_end,
                    "cells": [
                        [g, p] for item in e.path if item[0] == "cell"
                        for g, p in [(item[1], item[2])]
                    ],
                }
            )
        faces = []
        for f in self.faces:
            faces.append(
                {
                    "id": f.fid,
                    "corners": [[self.crossings[cid].name, q] for cid, q in f.corners],
                    "unbounded": f.unbounded,
                    "area": None if f.area is None else frac_to_str(f.area),
                }
            )
        return {
            "front": self.front.to_text(),
            "crossings": crossings,
            "edges": edges,
            "faces": faces,
            "basepoint_edge": self.bp_edge,
            "realization": {
                "actions": {k: frac_to_str(v) for k, v in sorted(self.actions.items())}
            },
        }


def relabel_quadrants(diag: LagrangianDiagram, cid: int) -> dict:
    """Compass quadrants renamed relative to the outgoing top-sheet direction
    (the positive pair always maps to NE and SW)."""
    c = diag.crossings[cid]
    over_out = c.transits[c.over_line][1]
    q_over = {"SE": "E", "SW": "S", "NW": "W", "NE": "N"}[over_out]
    order = ("NE", "NW", "SW", "SE")
    start = QUADS.index(q_over)
    return {QUADS[(start + i) % 4]: order[i] for i in range(4)}


def resolve(front: FrontWord) -> LagrangianDiagram:
    diag = LagrangianDiagram(front)
    _scan(diag)
    _chord_data(diag)
    _orient(diag)
    _trace_faces(diag)
    _reeb_signs(diag)
    _realize(diag)
    return diag


# ---------------------------------------------------------------------------
# scan construction


def _scan(diag: LagrangianDiagram) -> None:
    front = diag.front
    partials: list[dict] = []
    wires: list[tuple[int, int]] = []  # (pid, end_index) per position
    strand_ids: list[int] = []
    next_sid = 0
    x_count = 0
    r_count = 0
    diag.gap_layout.append(tuple())

    def new_partial(kind, lcusp_event=None, ends=None):
        partials.append(
            {
                "ends": ends if ends is not None else [None, None],
                "kind": kind,
                "lcusp_event": lcusp_event,
                "wire_cells": ([], []),  # chronological cells per end wire
            }
        )
        return len(partials) - 1

    for ev_idx, (kind, pos) in enumerate(front.events, start=1):
        k = pos - 1
        if kind == "l":
            pid = new_partial("chain", lcusp_event=ev_idx)
            wires[k:k] = [(pid, 0), (pid, 1)]
            up, low = next_sid, next_sid + 1
            next_sid += 2
            diag.strands[up] = StrandInfo(up, ev_idx, True)
            diag.strands[low] = StrandInfo(low, ev_idx, False)
            strand_ids[k:k] = [up, low]
        elif kind == "x":
            x_count += 1
            cid = len(diag.crossings)
            c = Crossing(
                cid,
                f"b{x_count}",
                "x",
                ev_idx,
                pos,
                (strand_ids[k], strand_ids[k + 1]),
            )
            diag.crossings.append(c)
            for offset, slot in ((0, "NW"), (1, "SW")):
                pid, endi = wires[k + offset]
                partials[pid]["ends"][endi] = (cid, slot)
            pe1 = new_partial("plain")
            partials[pe1]["ends"][0] = (cid, "NE")
            pe2 = new_partial("plain")
            partials[pe2]["ends"][0] = (cid, "SE")
            wires[k] = (pe1, 1)
            wires[k + 1] = (pe2, 1)
            strand_ids[k], strand_ids[k + 1] = strand_ids[k + 1], strand_ids[k]
        else:  # 'r'
            r_count += 1
            cid = len(diag.crossings)
            c = Crossing(
                cid,
                f"a{r_count}",
                "r",
                ev_idx,
                pos,
                (strand_ids[k], strand_ids[k + 1]),
            )
            diag.crossings.append(c)
            for offset, slot in ((0, "NW"), (1, "SW")):
                pid, endi = wires[k + offset]
                partials[pid]["ends"][endi] = (cid, slot)
            new_partial("cap", ends=[(cid, "NE"), (cid, "SE")])
            up, low = strand_ids[k], strand_ids[k + 1]
            diag.strands[up].death_event = ev_idx
            diag.strands[up].death_upper = True
            diag.strands[low].death_event = ev_idx
            diag.strands[low].death_upper = False
            del wires[k : k + 2]
            del strand_ids[k : k + 2]

        for p, (pid, endi) in enumerate(wires, start=1):
            partials[pid]["wire_cells"][endi].append((ev_idx, p))
        diag.gap_layout.append(tuple(strand_ids))

    # drop the index when a letter class has a single chord
    for letter, count in (("b", x_count), ("a", r_count)):
        if count == 1:
            for c in diag.crossings:
                if c.name == f"{letter}1":
                    c.name = letter

    # finalize edges
    for pid, part in enumerate(partials):
        if any(end is None for end in part["ends"]):
            raise TopologyError("unterminated strand in scan (internal)")
        path: list = []
        if part["kind"] == "chain":
            for g, p in reversed(part["wire_cells"][0]):
                path.append(("cell", g, p, "W"))
            path.append(("lcusp", part["lcusp_event"]))
            for g, p in part["wire_cells"][1]:
                path.append(("cell", g, p, "E"))
        elif part["kind"] == "plain":
            for g, p in part["wire_cells"][1]:
                path.append(("cell", g, p, "E"))
        diag.edges.append(
            Edge(pid, part["ends"], part["kind"], part["lcusp_event"], path)
        )
        for endi in (0, 1):
            cid, slot = part["ends"][endi]
            diag.crossings[cid].slot_edge[slot] = pid

    # basepoint
    bp_gap, bp_pos = front.basepoint
    bp_cell = (bp_gap, bp_pos)
    for e in diag.edges:
        if any(it[0] == "cell" and (it[1], it[2]) == bp_cell for it in e.path):
            e.has_bp = True
            diag.bp_edge = e.eid
            diag.bp_cell = bp_cell
            break
    else:
        raise TopologyError("basepoint cell not found on any edge (internal)")


# ---------------------------------------------------------------------------
# knot orientation


def _orient(diag: LagrangianDiagram) -> None:
    first_chain = next(e for e in diag.edges if e.kind == "chain" and e.lcusp_event == 1)
    # lower strand of the first left cusp runs east, toward ends[1]
    cur_eid, cur_head = first_chain.eid, 1
    seen = set()
    while True:
        edge = diag.edges[cur_eid]
        edge.head_end = cur_head
        diag.cycle.append((cur_eid, cur_head))
        seen.add(cur_eid)
        cid, slot = edge.ends[cur_head]
        out_slot = THROUGH[slot]
        c = diag.crossings[cid]
        line = "desc" if {slot, out_slot} == {"NW", "SE"} else "asc"
        c.transits[line] = (slot, out_slot)
        nxt_eid = c.slot_edge[out_slot]
        nxt = diag.edges[nxt_eid]
        nxt_head = 1 if nxt.ends[0] == (cid, out_slot) else 0
        if nxt.ends[0] == (cid, out_slot) and nxt.ends[1] == (cid, out_slot):
            raise TopologyError("degenerate edge ends (internal)")
        if (nxt_eid, nxt_head) == (first_chain.eid, 1):
            break
        cur_eid, cur_head = nxt_eid, nxt_head
    if len(seen) != len(diag.edges):
        raise TopologyError("orientation trace did not cover the diagram")
    for c in diag.crossings:
        if set(c.transits) != {"desc", "asc"}:
            raise TopologyError("vertex missing a strand transit (internal)")


def walk_tokens(diag: LagrangianDiagram) -> list:
    """Knot-ordered tokens: ('piece', key), ('jump', +-1), ('bp',).

    Jump is the Maslov potential step when passing a cusp in knot direction:
    -1 going upper branch to lower, +1 the other way.
    """
    tokens: list = []
    for eid, head in diag.cycle:
        edge = diag.edges[eid]
        if edge.kind == "cap":
            c = diag.crossings[edge.ends[0][0]]
            down = c.transits["desc"] == ("NW", "SE")
            tokens.append(("jump", -1 if down else 1))
            continue
        path = edge.path if head == 1 else list(reversed(edge.path))
        for item in path:
            if item[0] == "lcusp":
                # end0 holds the upper wire; passing end0 -> end1 is downward
                tokens.append(("jump", -1 if head == 1 else 1))
                continue
            _, g, p, d = item
            direction = d if head == 1 else ("E" if d == "W" else "W")
            if edge.has_bp and (g, p) == diag.bp_cell:
                first, second = ("w", "e") if direction == "E" else ("e", "w")
                tokens.append(("piece", piece_key(g, p, first)))
                tokens.append(("bp",))
                tokens.append(("piece", piece_key(g, p, second)))
            else:
                tokens.append(("piece", piece_key(g, p)))
    return tokens


# ---------------------------------------------------------------------------
# faces


def _trace_faces(diag: LagrangianDiagram) -> None:
    remaining = {(e.eid, end) for e in diag.edges for end in (0, 1)}
    diag._corner_face = {}
    first_chain = next(e for e in diag.edges if e.kind == "chain" and e.lcusp_event == 1)
    outer_seed = (first_chain.eid, 0)  # heading toward the upper-wire end

    while remaining:
        start = outer_seed if outer_seed in remaining else sorted(remaining)[0]
        fid = len(diag.faces)
        items: list = []
        corners: list = []
        cur = start
        while True:
            remaining.discard(cur)
            diag.directed_face[cur] = fid
            items.append(("edge", cur[0], cur[1]))
            cid, slot = diag.edges[cur[0]].ends[cur[1]]
            quad = QUAD_AT[slot]
            items.append(("corner", cid, quad))
            corners.append((cid, quad))
            diag._corner_face[(cid, quad)] = fid
            out_slot = CW_NEXT[slot]
            nxt_eid = diag.crossings[cid].slot_edge[out_slot]
            nxt = diag.edges[nxt_eid]
            if nxt.ends[0] == (cid, out_slot):
                cur = (nxt_eid, 1)
            else:
                cur = (nxt_eid, 0)
            if cur == start:
                break
        face = Face(fid, items, corners, unbounded=(start == outer_seed))
        diag.faces.append(face)

    v, e, f = len(diag.crossings), len(diag.edges), len(diag.faces)
    if v - e + f != 2:
        raise TopologyError(f"Euler check failed: V-E+F = {v - e + f}")
    if e != 2 * v:
        raise TopologyError("diagram is not 4-valent")


# ---------------------------------------------------------------------------
# chord data: endpoints of the double point, read just left of the vertex


def _chord_data(diag: LagrangianDiagram) -> None:
    for c in diag.crossings:
        gap = c.event - 1
        c.upper_strand, c.lower_strand = c.pair
        c.upper_piece = _piece_at(diag, gap, c.pos)
        c.lower_piece = _piece_at(diag, gap, c.pos + 1)


def _piece_at(diag: LagrangianDiagram, gap: int, pos: int) -> str:
    # hug the east half when the column holds the basepoint
    if (gap, pos) == diag.bp_cell:
        return piece_key(gap, pos, "e")
    return piece_key(gap, pos)


# ---------------------------------------------------------------------------
# Reeb signs and actions


def _reeb_signs(diag: LagrangianDiagram) -> None:
    # boundary leaves along the top sheet = descending line: east and west
    for c in diag.crossings:
        for q in QUADS:
            diag.quadrant_sign[(c.cid, q)] = 1 if q in ("E", "W") else -1


def _realize(diag: LagrangianDiagram) -> None:
    import sympy
    from sympy.solvers.simplex import lpmin

    syms = {c.cid: sympy.Symbol(f"l{c.cid}", positive=True) for c in diag.crossings}
    constraints = [syms[c.cid] >= 1 for c in diag.crossings]
    for f in diag.faces:
        if f.unbounded:
            continue
        expr = sympy.Integer(0)
        for cid, quad in f.corners:
            expr += diag.quadrant_sign[(cid, quad)] * syms[cid]
        constraints.append(expr >= 1)
    objective = sum(syms.values())
    try:
        _, assignment = lpmin(objective, constraints)
    except Exception as exc:  # infeasible would mean broken sign data
        raise RealizationError(f"action LP failed: {exc}") from exc

    for c in diag.crossings:
        val = assignment[syms[c.cid]]
        diag.actions[c.name] = Fraction(int(val.p), int(val.q))

    total = Fraction(0)
    for f in diag.faces:
        area = Fraction(0)
        for cid, quad in f.corners:
            sign = diag.quadrant_sign[(cid, quad)]
            area += sign * diag.actions[diag.crossings[cid].name]
        if f.unbounded:
            f.area = None
            outer = area
        else:
            if area < 1:
                raise RealizationError("bounded face with nonpositive area")
            f.area = area
            total += area
    if outer != -total:
        raise RealizationError("area bookkeeping failed")


# ---------------------------------------------------------------------------
# quadrant classification (public view of the sign data)


def classify_quadrants(diag: LagrangianDiagram) -> list[dict]:
    out = []
    for c in diag.crossings:
        labels = relabel_quadrants(diag, c.cid)
        out.append(
            {
                "crossing": c.name,
                "cyclic": [
                    {
                        "compass": q,
                        "label": labels[q],
                        "sign": diag.quadrant_sign[(c.cid, q)],
                    }
                    for q in QUADS
                ],
            }
        )
    return out
