"""Gradings: rotation number, Maslov potentials, chord degrees, shading.

Potentials live on strand pieces of the diagram cut at the basepoint; they
jump by one at every cusp passage (up is +1).  A chord's degree is the
potential of its top sheet minus that of its bottom sheet, both read off
just left of the vertex.  Cusp chords always come out as degree 1.  For rotation number r != 0 the degrees are the canonical
integer representatives of classes modulo 2r, and the formal variable
recording basepoint passages carries degree -2r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LagrangianDiagram, walk_tokens
from .front import FrontWord


@dataclass
class GradingData:
    rotation: int
    t_degree: int
    modulus: int  # abs(2r); 0 means honest Z-grading
    potentials: dict[str, int]  # piece key -> Maslov potential
    degrees: dict[str, int]  # chord name -> degree

    def degree(self, name: str) -> int:
        return self.degrees[name]

    def parity(self, name: str) -> int:
        return self.degrees[name] & 1

    def to_dict(self) -> dict:
        return {
            "rotation": self.rotation,
            "t_degree": self.t_degree,
            "modulus": self.modulus,
            "potentials": dict(sorted(self.potentials.items())),
            "degrees": dict(sorted(self.degrees.items())),
        }


def rotation_number(front_or_diag) -> int:
    diag = _as_diag(front_or_diag)
    down = up = 0
    for tok in walk_tokens(diag):
        if tok[0] == "jump":
            if tok[1] < 0:
                down += 1
            else:
                up += 1
    if (down - up) % 2:
        raise AssertionError("odd cusp imbalance on a closed curve")
    return (down - up) // 2


def _as_diag(front_or_diag) -> LagrangianDiagram:
    if isinstance(front_or_diag, LagrangianDiagram):
        return front_or_diag
    if isinstance(front_or_diag, FrontWord):
        from .diagram import resolve

        return resolve(front_or_diag)
    raise TypeError(type(front_or_diag))


def chord_gradings(diag: LagrangianDiagram) -> GradingData:
    tokens = walk_tokens(diag)
    # rotate so the walk starts right after the basepoint
    bp_at = next(i for i, t in enumerate(tokens) if t[0] == "bp")
    ordered = tokens[bp_at + 1 :] + tokens[:bp_at]

    potentials: dict[str, int] = {}
    cur = 0
    down = up = 0
    for tok in ordered:
        if tok[0] == "piece":
            if tok[1] in potentials:
                raise AssertionError(f"piece visited twice: {tok[1]}")
            potentials[tok[1]] = cur
        else:  # jump
            cur += tok[1]
            if tok[1] < 0:
                down += 1
            else:
                up += 1
    r = (down - up) // 2
    if cur != -2 * r:
        raise AssertionError("potential did not close up to -2r at basepoint")

    degrees = {}
    for c in diag.crossings:
        degrees[c.name] = potentials[c.upper_piece] - potentials[c.lower_piece]
        if c.kind == "r" and degrees[c.name] != 1:
            raise AssertionError("cusp chord degree must be 1")

    return GradingData(
        rotation=r,
        t_degree=-2 * r,
        modulus=abs(2 * r),
        potentials=potentials,
        degrees=degrees,
    )


def degree_via_complement(diag: LagrangianDiagram, grading: GradingData, name: str) -> int:
    """Degree computed along the capping path through the basepoint.

    Differs from the stored degree by exactly 2r; equal when r = 0.  Used as
    a consistency check on the potential bookkeeping.
    """
    c = diag.crossing_by_name(name)
    up = grading.potentials[c.upper_piece]
    low = grading.potentials[c.lower_piece]
    return (up - (low - 2 * grading.rotation)) if grading.rotation else up - low


# ---------------------------------------------------------------------------
# shading rules for the integer sign counts


@dataclass
class Shading:
    rule: str  # 'A' or 'B'
    shaded: dict[str, frozenset]  # chord name -> shaded compass quadrants

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "shaded": {k: sorted(v) for k, v in sorted(self.shaded.items())},
        }


def shade(
    diag: LagrangianDiagram,
    grading: GradingData,
    rule: str,
    flip: bool = False,
) -> Shading:
    """Shaded quadrants per chord.  flip swaps the parity convention; it
    exists only as a negative control and is expected to break d^2 = 0."""
    from .diagram import FLANK, QUAD_BETWEEN

    if rule not in ("A", "B"):
        raise ValueError("rule must be 'A' or 'B'")
    shaded: dict[str, frozenset] = {}
    for c in diag.crossings:
        over = c.over_line
        under = "asc" if over == "desc" else "desc"
        in_over = c.transits[over][0]
        in_under, out_under = c.transits[under]
        even = (grading.parity(c.name) == 0) != flip
        if rule == "A":
            quads = frozenset(FLANK[in_over]) if even else frozenset()
        else:
            other = out_under if even else in_under
            quads = frozenset({QUAD_BETWEEN[frozenset((in_over, other))]})
        shaded[c.name] = quads
    return Shading(rule, shaded)
