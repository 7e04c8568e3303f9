"""Enumerate the rigid disks that feed the differential.

A disk is assembled from copies of bounded faces of the diagram, glued in
pairs along edges.  Its counterclockwise boundary sweeps exactly one positive
quadrant (east or west, at the output chord) and any number of negative ones,
and the face areas balance the chord actions exactly:

    action(output) - sum of actions of negative corners = total glued area.

The builder walks the boundary with a cursor.  At each undecided side it may
declare it boundary, glue a fresh copy of the neighboring face across it, or
zip it onto the fan-adjacent side when both lie over the same edge.  Every
corner of the disk is sealed the moment its quadrant fan completes, so bad
vertex types are pruned early and corners are emitted already in boundary
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import LagrangianDiagram, QUADS
from .grading import Shading

_QIDX = {q: i for i, q in enumerate(QUADS)}
_NEG = ("N", "S")
_CAP_WRAP = frozenset(("N", "E", "S"))


class SearchBudgetExceeded(RuntimeError):
    """Raised when disk enumeration exceeds its node budget."""


@dataclass(frozen=True)
class DiskCW:
    """One rigid disk, recorded as a glued complex of face copies."""

    chord: str
    positive: tuple[str, str]  # (chord, quadrant)
    corners: tuple[tuple[str, str], ...]  # negative corners, ccw from positive
    word: tuple[str, ...]
    t_exp: int
    s_A: int
    s_B: int
    face_copies: tuple[int, ...]
    edge_gluings: tuple
    boundary: tuple  # walked (copy, side) pairs in ccw order
    area: Fraction

    def to_dict(self) -> dict:
        from .util import frac_to_str

        return {
            "positive": list(self.positive),
            "corners": [list(c) for c in self.corners],
            "word": list(self.word),
            "t_exp": self.t_exp,
            "s_A": self.s_A,
            "s_B": self.s_B,
            "face_copies": list(self.face_copies),
            "area": frac_to_str(self.area),
        }


def _arc_ok(quads) -> bool:
    # the covered quadrants must form one contiguous run around the vertex
    k = len(quads)
    if k <= 1:
        return True
    if k > 4:
        return False
    idx = {_QIDX[q] for q in quads}
    return any(
        all((r + i) % 4 in idx for i in range(k)) for r in range(4)
    )


class _Build:
    """Mutable search state; cloned at each branch point."""

    __slots__ = (
        "copies", "glued", "parent", "cls", "walked", "walkset",
        "word", "area", "neg",
    )

    def __init__(self):
        self.copies: list[int] = []
        self.glued: dict = {}
        self.parent: dict = {}
        self.cls: dict = {}  # root -> (cid, frozenset of quads, slot count)
        self.walked: list = []
        self.walkset: set = set()
        self.word: list = []
        self.area = Fraction(0)
        self.neg = Fraction(0)

    def clone(self) -> "_Build":
        st = _Build.__new__(_Build)
        st.copies = list(self.copies)
        st.glued = dict(self.glued)
        st.parent = dict(self.parent)
        st.cls = dict(self.cls)
        st.walked = list(self.walked)
        st.walkset = set(self.walkset)
        st.word = list(self.word)
        st.area = self.area
        st.neg = self.neg
        return st

    def find(self, slot):
        root = slot
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[slot] != root:
            self.parent[slot], slot = root, self.parent[slot]
        return root

    def union(self, s1, s2) -> bool:
        r1, r2 = self.find(s1), self.find(s2)
        if r1 == r2:
            return True
        cid1, q1, n1 = self.cls[r1]
        cid2, q2, n2 = self.cls[r2]
        if cid1 != cid2 or q1 & q2:
            return False
        quads = q1 | q2
        if len(quads) > 4 or not _arc_ok(quads):
            return False
        self.parent[r2] = r1
        self.cls[r1] = (cid1, quads, n1 + n2)
        del self.cls[r2]
        return True


class _Enumerator:
    def __init__(self, diag: LagrangianDiagram, chord: str, budget: int):
        self.diag = diag
        self.chord = chord
        self.budget = budget
        self.nodes = 0
        c = diag.crossing_by_name(chord)
        self.cid = c.cid
        self.la = diag.actions[chord]
        self.sides_of = {}
        self.corners_of = {}
        for f in diag.faces:
            self.sides_of[f.fid] = [(it[1], it[2]) for it in f.items[0::2]]
            self.corners_of[f.fid] = list(f.corners)
        self.found: list = []

    # -- slot helpers ----------------------------------------------------
    def _side_dir(self, st, s):
        return self.sides_of[st.copies[s[0]]][s[1]]

    def _slot_label(self, st, slot):
        return self.corners_of[st.copies[slot[0]]][slot[1]]

    def _head(self, st, s):
        return (s[0], s[1])

    def _tail(self, st, s):
        m = len(self.sides_of[st.copies[s[0]]])
        return (s[0], (s[1] - 1) % m)

    def _add_copy(self, st, fid) -> int:
        c = len(st.copies)
        st.copies.append(fid)
        for k in range(len(self.corners_of[fid])):
            slot = (c, k)
            st.parent[slot] = slot
            cid, quad = self.corners_of[fid][k]
            st.cls[slot] = (cid, frozenset((quad,)), 1)
        return c

    def _rotate(self, st, s):
        # next side counterclockwise around the disk after s, fanning
        # through glued pairs around the head vertex of s
        hops = 0
        c, k = s
        m = len(self.sides_of[st.copies[c]])
        s = (c, (k + 1) % m)
        while s in st.glued:
            c2, k2 = st.glued[s]
            m2 = len(self.sides_of[st.copies[c2]])
            s = (c2, (k2 + 1) % m2)
            hops += 1
            if hops > 8 * len(st.parent) + 8:
                raise RuntimeError("rotation fan does not terminate")
        return s

    def _glue(self, st, s1, s2) -> bool:
        st.glued[s1] = s2
        st.glued[s2] = s1
        return st.union(self._head(st, s1), self._tail(st, s2)) and st.union(
            self._tail(st, s1), self._head(st, s2)
        )

    # -- seal checks -----------------------------------------------------
    def _seal_boundary(self, st, slot, closing: bool):
        """Vertex fan completed at a boundary vertex.  Returns False to
        prune, or True after recording a negative corner if one appears."""
        root = st.find(slot)
        cid, quads, nslots = st.cls[root]
        if nslots != len(quads) or not _arc_ok(quads):
            return False
        if nslots == 1:
            quad = next(iter(quads))
            if closing:
                return cid == self.cid and quad == self.pos_quad
            if quad not in _NEG:
                return False
            name = self.diag.crossings[cid].name
            neg = st.neg + self.diag.actions[name]
            if st.area > self.la - neg:
                return False
            st.word.append((name, quad))
            st.neg = neg
            return True
        if nslots == 2 and not closing:
            return True  # boundary runs straight through the crossing
        if nslots == 3 and not closing and self._cap_wrap(cid, quads):
            return True  # boundary rounds the loop at a right cusp
        return False

    def _cap_wrap(self, cid: int, quads) -> bool:
        """A three-quadrant vertex is legal only where the boundary follows
        the knot around a cusp loop whose interior the disk swallows."""
        return quads == _CAP_WRAP and self.diag.crossings[cid].kind == "r"

    def _seal_interior(self, st, slot) -> bool:
        root = st.find(slot)
        cid, quads, nslots = st.cls[root]
        if nslots != 4 or len(quads) != 4:
            return False
        # the fan must close on itself: every flanking side already glued
        for p_slot in list(st.parent):
            if st.find(p_slot) != root:
                continue
            c, k = p_slot
            m = len(self.sides_of[st.copies[c]])
            if (c, k) not in st.glued or (c, (k + 1) % m) not in st.glued:
                return False
        return True

    # -- search ----------------------------------------------------------
    def run(self, pos_quad: str):
        self.pos_quad = pos_quad
        fid = self.diag.corner_face(self.cid, pos_quad)
        f = self.diag.faces[fid]
        if f.unbounded or f.area > self.la:
            return
        st = _Build()
        self._add_copy(st, fid)
        st.area = f.area
        k0 = self.corners_of[fid].index((self.cid, pos_quad))
        m = len(self.corners_of[fid])
        self.sigma0 = (0, (k0 + 1) % m)
        st.walked.append(self.sigma0)
        st.walkset.add(self.sigma0)
        self._extend(st, self._rotate(st, self.sigma0))

    def _extend(self, st: _Build, cand):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"disk search for {self.chord} exceeded {self.budget} nodes"
            )
        if cand == self.sigma0:
            self._close(st)
            return
        if cand in st.walkset:
            return  # boundary would pinch at an earlier vertex

        # option 1: the side lies on the boundary
        st2 = st.clone()
        st2.walked.append(cand)
        st2.walkset.add(cand)
        if self._seal_boundary(st2, self._tail(st2, cand), closing=False):
            self._extend(st2, self._rotate(st2, cand))

        # option 2: glue a fresh copy of the face across the edge
        eid, to_end = self._side_dir(st, cand)
        fid2 = self.diag.directed_face[(eid, 1 - to_end)]
        f2 = self.diag.faces[fid2]
        last = st.walked[-1]
        if not f2.unbounded and st.area + f2.area <= self.la - st.neg:
            st2 = st.clone()
            c2 = self._add_copy(st2, fid2)
            st2.area += f2.area
            k2 = self.sides_of[fid2].index((eid, 1 - to_end))
            if self._glue(st2, cand, (c2, k2)):
                self._extend(st2, self._rotate(st2, last))

        # option 3: glue onto an existing side, closing the head vertex;
        # the fan may first have to absorb cells across still-open sides
        self._close_vertex(st, cand, eid, to_end, last, 0)

    def _close_vertex(self, st: _Build, cand, eid, to_end, last, depth):
        """Zip the fan around head(cand) shut over cand's edge.  Whenever
        the fan meets an open side over a different edge, absorb the cell
        behind it (a fresh face copy, or some open side already in the
        complex) and keep fanning; a vertex holds at most four cells."""
        if depth > 4:
            return
        tau = self._rotate(st, cand)
        if tau == self.sigma0 or tau == cand or tau in st.walkset:
            return
        eid_t, end_t = self._side_dir(st, tau)
        if (eid_t, end_t) == (eid, 1 - to_end):
            st2 = st.clone()
            if self._glue(st2, cand, tau) and self._seal_interior(
                st2, self._head(st2, cand)
            ):
                self._extend(st2, self._rotate(st2, last))
            return
        fid_b = self.diag.directed_face[(eid_t, 1 - end_t)]
        fb = self.diag.faces[fid_b]
        if not fb.unbounded and st.area + fb.area <= self.la - st.neg:
            st2 = st.clone()
            cb = self._add_copy(st2, fid_b)
            st2.area += fb.area
            kb = self.sides_of[fid_b].index((eid_t, 1 - end_t))
            if self._glue(st2, tau, (cb, kb)):
                self._close_vertex(st2, cand, eid, to_end, last, depth + 1)
        for u in self._open_sides(st):
            if u in (cand, tau) or self._side_dir(st, u) != (eid_t, 1 - end_t):
                continue
            st2 = st.clone()
            if self._glue(st2, tau, u):
                self._close_vertex(st2, cand, eid, to_end, last, depth + 1)

    def _open_sides(self, st: _Build):
        for c in range(len(st.copies)):
            for k in range(len(self.sides_of[st.copies[c]])):
                s = (c, k)
                if s not in st.glued and s not in st.walkset:
                    yield s

    def _close(self, st: _Build):
        if st.area != self.la - st.neg:
            return
        if not self._seal_boundary(st, self._tail(st, self.sigma0), closing=True):
            return
        if not self._audit(st):
            return
        self.found.append((st, self.pos_quad))

    def _audit(self, st: _Build) -> bool:
        # complex-wide disk invariants; the walk should enforce all of them
        for c in range(len(st.copies)):
            for k in range(len(self.sides_of[st.copies[c]])):
                s = (c, k)
                if (s in st.glued) == (s in st.walkset):
                    return False
        nv = len({st.find(s) for s in st.parent})
        ne = len(st.walked) + len(st.glued) // 2
        if nv - ne + len(st.copies) != 1:
            return False
        for root, (cid, quads, nslots) in list(st.cls.items()):
            if st.find(root) != root:
                continue
            if nslots == 4:
                if len(quads) != 4:
                    return False
            elif nslots == 3:
                if len(quads) != 3 or not self._cap_wrap(cid, quads):
                    return False
            elif nslots > 2 or len(quads) != nslots:
                return False
        return True


def enumerate_disks(
    diag: LagrangianDiagram,
    shadings: dict[str, Shading],
    chord: str,
    budget: int = 500_000,
) -> list[DiskCW]:
    """All rigid disks whose positive corner sits at the named chord."""
    enum = _Enumerator(diag, chord, budget)
    for quad in ("E", "W"):
        enum.run(quad)

    disks = []
    seen = set()
    for st, pos_quad in enum.found:
        positive = (chord, pos_quad)
        corners = tuple(st.word)
        t_exp = 0
        for s in st.walked:
            eid, to_end = enum._side_dir(st, s)
            edge = diag.edges[eid]
            if edge.has_bp:
                t_exp += 1 if to_end == edge.head_end else -1
        marks = [positive] + list(corners)
        s_a = sum(1 for n, q in marks if q in shadings["A"].shaded[n])
        s_b = sum(1 for n, q in marks if q in shadings["B"].shaded[n])

        # relabel copies independently of build order: boundary-walk
        # first-visit first, then breadth-first across the gluings, so a
        # complex reached along two search routes dedups to one disk
        relabel: dict[int, int] = {}
        for c, _ in st.walked:
            if c not in relabel:
                relabel[c] = len(relabel)
        queue = sorted(relabel, key=relabel.get)
        while queue:
            grown = []
            for c in queue:
                for k in range(len(enum.sides_of[st.copies[c]])):
                    part = st.glued.get((c, k))
                    if part is not None and part[0] not in relabel:
                        relabel[part[0]] = len(relabel)
                        grown.append(part[0])
            queue = grown
        if len(relabel) != len(st.copies):
            raise RuntimeError("complex has unreachable copies (internal)")
        face_copies = [0] * len(st.copies)
        for c, lbl in relabel.items():
            face_copies[lbl] = st.copies[c]
        gluings = tuple(sorted(
            {
                tuple(sorted(((relabel[s[0]], s[1]), (relabel[t[0]], t[1]))))
                for s, t in st.glued.items()
            }
        ))
        boundary = tuple((relabel[c], k) for c, k in st.walked)

        disk = DiskCW(
            chord=chord,
            positive=positive,
            corners=corners,
            word=tuple(n for n, _ in corners),
            t_exp=t_exp,
            s_A=s_a,
            s_B=s_b,
            face_copies=tuple(face_copies),
            edge_gluings=gluings,
            boundary=boundary,
            area=st.area,
        )
        key = (disk.positive, disk.face_copies, disk.edge_gluings, disk.boundary)
        if key in seen:
            continue  # same complex, reached along another search route
        seen.add(key)
        disks.append(disk)
    disks.sort(key=lambda d: (len(d.word), d.word, d.t_exp, d.positive))
    return disks


def disk_sign(d: DiskCW, rule: str) -> int:
    """Sign contributed by the disk: parity of its shaded corner count."""
    if rule == "A":
        return -1 if d.s_A % 2 else 1
    if rule == "B":
        return -1 if d.s_B % 2 else 1
    raise ValueError("rule must be 'A' or 'B'")


def both_shadings(diag: LagrangianDiagram, grading) -> dict[str, Shading]:
    from .grading import shade

    return {"A": shade(diag, grading, "A"), "B": shade(diag, grading, "B")}
