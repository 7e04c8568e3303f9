"""Topological fingerprints for resolved diagrams: crossing signs, framed
writhe, and the Kauffman bracket state sum.  Development tooling for picking
corpus fronts; not part of the shipped library API.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from legch.diagram import (  # noqa: E402
    SLOTS,
    LagrangianDiagram,
    _chord_data,
    _orient,
    _scan,
)
from legch.front import parse_front  # noqa: E402

_VEC = {"NE": (1, 1), "NW": (-1, 1), "SW": (-1, -1), "SE": (1, -1)}
_SLOT_IDX = {s: i for i, s in enumerate(SLOTS)}


def skeleton(text: str) -> LagrangianDiagram:
    """Combinatorial resolution only: no faces, no area realization."""
    diag = LagrangianDiagram(parse_front(text))
    _scan(diag)
    _chord_data(diag)
    _orient(diag)
    return diag


def crossing_sign(diag: LagrangianDiagram, cid: int) -> int:
    c = diag.crossings[cid]
    over = _VEC[c.transits["desc"][1]]
    under = _VEC[c.transits["asc"][1]]
    det = over[0] * under[1] - over[1] * under[0]
    return 1 if det > 0 else -1


def thurston_bennequin(diag: LagrangianDiagram) -> int:
    """Writhe of the resolved diagram: the contact framing number."""
    return sum(crossing_sign(diag, c.cid) for c in diag.crossings)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


_DELTA = {2: -1, -2: -1}  # value of one extra loop


def kauffman_bracket(diag: LagrangianDiagram) -> dict:
    """State sum over smoothings; over strand runs NW to SE everywhere.

    The A-smoothing joins NW-NE and SW-SE (merging the east and west
    regions swept by turning the over strand counterclockwise).
    """
    ncross = len(diag.crossings)
    nodes = 4 * ncross

    def node(cid, slot):
        return 4 * cid + _SLOT_IDX[slot]

    edge_joins = [
        (node(*e.ends[0]), node(*e.ends[1])) for e in diag.edges
    ]
    total: dict = {}
    for state in range(1 << ncross):
        parent = list(range(nodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for x, y in edge_joins:
            union(x, y)
        a_count = 0
        for cid in range(ncross):
            if state & (1 << cid):
                a_count += 1
                union(node(cid, "NW"), node(cid, "NE"))
                union(node(cid, "SW"), node(cid, "SE"))
            else:
                union(node(cid, "NW"), node(cid, "SW"))
                union(node(cid, "NE"), node(cid, "SE"))
        loops = len({find(x) for x in range(nodes)})
        term = {a_count - (ncross - a_count): 1}
        for _ in range(loops - 1):
            term = _poly_mul(term, _DELTA)
        total = _poly_add(total, term)
    return total


def framed_jones(diag: LagrangianDiagram) -> dict:
    """Writhe-corrected bracket: a knot invariant, as a polynomial in A.

    The Jones polynomial in t is this with t = A^-4.
    """
    w = thurston_bennequin(diag)
    bracket = kauffman_bracket(diag)
    sign = 1 if w % 2 == 0 else -1
    return {e - 3 * w: sign * c for e, c in bracket.items()}


def jones_key(diag: LagrangianDiagram) -> tuple:
    return tuple(sorted(framed_jones(diag).items()))


def jones_in_t(diag: LagrangianDiagram) -> dict:
    """Exponent map in the t variable; exponents of A are multiples of 4."""
    out = {}
    for e, c in framed_jones(diag).items():
        if e % 4:
            raise ValueError("bracket exponent not divisible by 4 on a knot")
        out[-e // 4] = c
    return out


if __name__ == "__main__":
    for text in sys.argv[1:]:
        diag = skeleton(text)
        from legch.grading import rotation_number

        print(
            f"{text!r}: tb {thurston_bennequin(diag)}, "
            f"r {rotation_number(diag)}, jones(t) {jones_in_t(diag)}"
        )
