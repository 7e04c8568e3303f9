"""Static SVG pictures of resolved diagrams.

One panel shows the knot with crossings drawn over/under, the basepoint,
chord labels, and optionally the shaded quadrants of a sign rule.  When
disks are supplied, one extra panel per disk repeats the picture with that
disk's corners marked: the positive corner gets a solid ring, negative
corners get hollow ones.  Output is plain SVG text with no scripting.
"""

from __future__ import annotations

from .diagram import LagrangianDiagram
from .grading import GradingData, Shading

COL = 56.0
ROW = 44.0
MARGIN = 30.0
LABEL_STRIP = 26.0

_SLOT_OFF = {
    "NW": (-0.5, -0.5),
    "NE": (0.5, -0.5),
    "SW": (-0.5, 0.5),
    "SE": (0.5, 0.5),
}
# compass wedge corners, as (dx, dy) pairs in screen coordinates (y down)
_WEDGE = {
    "N": ((-0.3, -0.34), (0.3, -0.34)),
    "S": ((-0.3, 0.34), (0.3, 0.34)),
    "E": ((0.38, -0.27), (0.38, 0.27)),
    "W": ((-0.38, -0.27), (-0.38, 0.27)),
}
_SHADE_FILL = {"A": "#e8a33d", "B": "#4f8fd0"}


def _fmt(x: float) -> str:
    s = f"{x:.1f}"
    return s[:-2] if s.endswith(".0") else s


class _Panel:
    """Collects SVG fragments for one copy of the diagram."""

    def __init__(self, diag: LagrangianDiagram):
        self.diag = diag
        self.parts: list[str] = []

    def center(self, cid: int):
        c = self.diag.crossings[cid]
        return c.event * COL, (c.pos + 0.5) * ROW

    def slot_point(self, cid: int, slot: str):
        cx, cy = self.center(cid)
        dx, dy = _SLOT_OFF[slot]
        return cx + dx * COL, cy + dy * ROW

    def cell_point(self, gap: int, pos: int):
        return (gap + 0.5) * COL, pos * ROW

    def line(self, pts, **attrs):
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
        self.path(d, **attrs)

    def path(self, d: str, **attrs):
        extra = "".join(
            f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items()
        )
        self.parts.append(f'<path d="{d}" fill="none"{extra}/>')

    def text(self, x, y, s, size=13, fill="#222", anchor="middle"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
            f'fill="{fill}" text-anchor="{anchor}" '
            f'font-family="monospace">{s}</text>'
        )

    # -- diagram layers --------------------------------------------------

    def edges(self):
        for e in self.diag.edges:
            if e.kind == "cap":
                cid = e.ends[0][0]
                x1, y1 = self.slot_point(cid, "NE")
                x2, y2 = self.slot_point(cid, "SE")
                cx, cy = self.center(cid)
                self.path(
                    f"M {_fmt(x1)} {_fmt(y1)} Q {_fmt(cx + 1.15 * COL)} "
                    f"{_fmt(cy)} {_fmt(x2)} {_fmt(y2)}",
                    stroke="#222",
                    stroke_width=2,
                )
                continue
            pts = [self.slot_point(*e.ends[0])]
            pending_cusp = None
            for step in e.path:
                if step[0] == "cell":
                    _, gap, pos, _side = step
                    pt = self.cell_point(gap, pos)
                    if pending_cusp is not None:
                        px, py = pts[-1]
                        cx = (pending_cusp - 0.5) * COL
                        pts.append((cx, (py + pt[1]) / 2))
                        pending_cusp = None
                    pts.append(pt)
                else:  # left cusp bend; y interpolated from its neighbors
                    pending_cusp = step[1]
            pts.append(self.slot_point(*e.ends[1]))
            if pending_cusp is not None:
                px, py = pts[-2]
                qx, qy = pts[-1]
                pts.insert(-1, ((pending_cusp - 0.5) * COL, (py + qy) / 2))
            self.line(pts, stroke="#222", stroke_width=2)

    def crossings(self):
        for c in self.diag.crossings:
            cx, cy = self.center(c.cid)
            over = [self.slot_point(c.cid, s) for s in ("NW", "SE")]
            under = [self.slot_point(c.cid, s) for s in ("SW", "NE")]
            gap = 0.16
            for (x1, y1), toward in ((under[0], -1), (under[1], 1)):
                ex = cx + toward * gap * COL
                ey = cy - toward * gap * ROW
                self.line([(x1, y1), (ex, ey)], stroke="#222", stroke_width=2)
            self.line(over, stroke="#222", stroke_width=2)

    def basepoint(self):
        gap, pos = self.diag.bp_cell
        x, y = self.cell_point(gap, pos)
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#b03030"/>'
        )
        self.text(x, y - 8, "bp", size=11, fill="#b03030")

    def labels(self, grading: GradingData | None):
        for c in self.diag.crossings:
            cx, cy = self.center(c.cid)
            s = c.name
            if grading is not None:
                s = f"{c.name}|{grading.degree(c.name)}|"
            self.text(cx, cy - 0.62 * ROW, s, size=12, fill="#555")

    def shading(self, sh: Shading):
        fill = _SHADE_FILL[sh.rule]
        for c in self.diag.crossings:
            cx, cy = self.center(c.cid)
            for quad in sorted(sh.shaded[c.name]):
                (ax, ay), (bx, by) = _WEDGE[quad]
                d = (
                    f"M {_fmt(cx)} {_fmt(cy)} "
                    f"L {_fmt(cx + ax * COL)} {_fmt(cy + ay * ROW)} "
                    f"L {_fmt(cx + bx * COL)} {_fmt(cy + by * ROW)} Z"
                )
                self.parts.append(
                    f'<path d="{d}" fill="{fill}" fill-opacity="0.45" '
                    f'stroke="none"/>'
                )

    def corner_marks(self, disk):
        by_cid = {c.name: c.cid for c in self.diag.crossings}

        def mark(chord, quad, solid):
            cx, cy = self.center(by_cid[chord])
            (ax, ay), (bx, by) = _WEDGE[quad]
            mx = cx + (ax + bx) / 2 * COL * 0.75
            my = cy + (ay + by) / 2 * ROW * 0.75
            color = "#108040" if solid else "#c02020"
            fill = color if solid else "none"
            self.parts.append(
                f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="6" '
                f'fill="{fill}" stroke="{color}" stroke-width="2"/>'
            )

        mark(*disk.positive, True)
        for chord, quad in disk.corners:
            mark(chord, quad, False)


def _panel_size(diag: LagrangianDiagram):
    cols = len(diag.front.events)
    rows = max(len(layout) for layout in diag.gap_layout)
    return (cols + 1) * COL + MARGIN, (rows + 1) * ROW + LABEL_STRIP


def render_svg(
    diag: LagrangianDiagram,
    grading: GradingData | None = None,
    shading: Shading | None = None,
    disks=None,
    title: str | None = None,
) -> str:
    """Full SVG document: the diagram panel, then one panel per disk."""
    width, panel_h = _panel_size(diag)
    disks = list(disks or [])
    height = panel_h * (1 + len(disks))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} '
        f'{_fmt(height)}">',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]

    def emit(panel: _Panel, index: int, caption: str):
        oy = panel_h * index + LABEL_STRIP
        out.append(f'<g transform="translate({_fmt(MARGIN / 2)} {_fmt(oy)})">')
        out.extend(panel.parts)
        out.append("</g>")
        out.append(
            f'<text x="{_fmt(MARGIN / 2)}" y="{_fmt(panel_h * index + 16)}" '
            f'font-size="13" fill="#222" font-family="monospace">'
            f"{caption}</text>"
        )

    base = _Panel(diag)
    if shading is not None:
        base.shading(shading)
    base.edges()
    base.crossings()
    base.basepoint()
    base.labels(grading)
    caption = title or diag.front.to_text()
    if shading is not None:
        caption += f"  [rule {shading.rule} shading]"
    emit(base, 0, caption)

    for i, disk in enumerate(disks, start=1):
        p = _Panel(diag)
        if shading is not None:
            p.shading(shading)
        p.edges()
        p.crossings()
        p.basepoint()
        p.labels(grading)
        p.corner_marks(disk)
        word = "*".join(disk.word) or "1"
        emit(p, i, f"disk {i} at {disk.chord}: word {word}, t^{disk.t_exp}, "
                   f"area {disk.area}")

    out.append("</svg>")
    return "\n".join(out) + "\n"
