"""Brute-force disk finder used to cross-check the walking enumerator.

This deliberately shares no search logic with the production walker.  It
enumerates every way to glue copies of bounded faces along matching edge
sides, in a fixed global side order, then keeps the complexes that pass an
independent battery of disk checks: connectivity, Euler characteristic one,
a single boundary circle, legal vertex types, exactly one positive corner
at the requested chord, and exact area balance.  Complexes are deduplicated
by relabeling copies in boundary-walk order.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import LagrangianDiagram, QUADS

_QIDX = {q: i for i, q in enumerate(QUADS)}


class OracleBudgetExceeded(RuntimeError):
    """Raised when the brute-force search exceeds its node budget."""


def _arc_ok(quads) -> bool:
    k = len(quads)
    if k <= 1:
        return True
    if k > 4:
        return False
    idx = {_QIDX[q] for q in quads}
    return any(all((r + i) % 4 in idx for i in range(k)) for r in range(4))


class _Oracle:
    def __init__(self, diag: LagrangianDiagram, chord: str, budget: int):
        self.diag = diag
        self.chord = chord
        self.cid = diag.crossing_by_name(chord).cid
        self.la = diag.actions[chord]
        self.budget = budget
        self.nodes = 0
        self.sides_of = {}
        self.corners_of = {}
        for f in diag.faces:
            self.sides_of[f.fid] = [(it[1], it[2]) for it in f.items[0::2]]
            self.corners_of[f.fid] = list(f.corners)
        self.results: dict = {}

    def run(self):
        for quad in ("E", "W"):
            fid = self.diag.corner_face(self.cid, quad)
            f = self.diag.faces[fid]
            if f.unbounded or f.area > self.la:
                continue
            self.copies = [fid]
            self.area = f.area
            self.glued = {}
            self.boundary = set()
            self._rec(0)
        return sorted(self.results.values())

    # -- enumeration ------------------------------------------------------
    def _all_sides(self):
        for c, fid in enumerate(self.copies):
            for k in range(len(self.sides_of[fid])):
                yield (c, k)

    def _rec(self, idx: int):
        self.nodes += 1
        if self.nodes > self.budget:
            raise OracleBudgetExceeded(
                f"oracle search for {self.chord} exceeded {self.budget} nodes"
            )
        flat = list(self._all_sides())
        while idx < len(flat):
            s = flat[idx]
            if s not in self.glued and s not in self.boundary:
                break
            idx += 1
        else:
            self._validate()
            return
        s = flat[idx]
        eid, to_end = self._dir(s)
        opposite = (eid, 1 - to_end)

        self.boundary.add(s)
        self._rec(idx + 1)
        self.boundary.discard(s)

        fid2 = self.diag.directed_face[opposite]
        f2 = self.diag.faces[fid2]
        if not f2.unbounded and self.area + f2.area <= self.la:
            c2 = len(self.copies)
            self.copies.append(fid2)
            self.area += f2.area
            k2 = self.sides_of[fid2].index(opposite)
            self.glued[s] = (c2, k2)
            self.glued[(c2, k2)] = s
            self._rec(idx + 1)
            del self.glued[s], self.glued[(c2, k2)]
            self.area -= f2.area
            self.copies.pop()

        for t in flat[idx + 1 :]:
            if t in self.glued or t in self.boundary:
                continue
            if self._dir(t) != opposite:
                continue
            self.glued[s] = t
            self.glued[t] = s
            self._rec(idx + 1)
            del self.glued[s], self.glued[t]

    def _dir(self, s):
        return self.sides_of[self.copies[s[0]]][s[1]]

    # -- validation -------------------------------------------------------
    def _validate(self):
        copies, glued, boundary = self.copies, self.glued, self.boundary

        # connectivity of the copies through gluings
        comp = list(range(len(copies)))

        def croot(i):
            while comp[i] != i:
                comp[i] = comp[comp[i]]
                i = comp[i]
            return i

        for s, t in glued.items():
            comp[croot(s[0])] = croot(t[0])
        if len({croot(i) for i in range(len(copies))}) != 1:
            return

        # vertex classes from the edge identifications
        slots = [
            (c, k) for c, fid in enumerate(copies)
            for k in range(len(self.corners_of[fid]))
        ]
        parent = {v: v for v in slots}

        def vroot(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def head(s):
            return (s[0], s[1])

        def tail(s):
            m = len(self.sides_of[copies[s[0]]])
            return (s[0], (s[1] - 1) % m)

        for s, t in glued.items():
            parent[vroot(head(s))] = vroot(tail(t))

        classes: dict = {}
        for v in slots:
            classes.setdefault(vroot(v), []).append(v)

        nv = len(classes)
        ne = len(boundary) + len(glued) // 2
        if nv - ne + len(copies) != 1:
            return

        positive = []
        neg_sum = Fraction(0)
        corner_class: dict = {}
        for root, members in classes.items():
            labels = [self.corners_of[copies[c]][k] for c, k in members]
            cids = {cid for cid, _ in labels}
            quads = [q for _, q in labels]
            if len(cids) != 1 or len(set(quads)) != len(quads):
                return
            if not _arc_ok(quads):
                return
            flanks = []
            for c, k in members:
                m = len(self.sides_of[copies[c]])
                flanks += [(c, k), (c, (k + 1) % m)]
            n_glued = sum(1 for s in flanks if s in glued)
            interior = n_glued == len(flanks)
            if interior:
                if len(members) != 4:
                    return
            else:
                if len(members) == 3:
                    # legal only as the boundary rounding a cusp loop whose
                    # interior the disk swallows: no corner, no area charge
                    cid = labels[0][0]
                    if set(quads) != {"N", "E", "S"}:
                        return
                    if self.diag.crossings[cid].kind != "r":
                        return
                    continue
                if len(members) > 2:
                    return
                if len(members) == 1:
                    cid, quad = labels[0]
                    if quad in ("E", "W"):
                        positive.append((root, cid, quad))
                    else:
                        neg_sum += self.diag.actions[self.diag.crossings[cid].name]
                    corner_class[root] = labels[0]

        if len(positive) != 1 or positive[0][1] != self.cid:
            return
        if self.area != self.la - neg_sum:
            return

        # single boundary circle through the positive corner
        root0, _, pos_quad = positive[0]
        (c0, k0) = classes[root0][0]
        m0 = len(self.sides_of[copies[c0]])
        start = (c0, (k0 + 1) % m0)
        if start not in boundary:
            return
        walk = []
        cur = start
        for _ in range(len(boundary) + 1):
            walk.append(cur)
            c, k = cur
            m = len(self.sides_of[copies[c]])
            nxt = (c, (k + 1) % m)
            hops = 0
            while nxt in glued:
                c2, k2 = glued[nxt]
                m2 = len(self.sides_of[copies[c2]])
                nxt = (c2, (k2 + 1) % m2)
                hops += 1
                if hops > 8 * len(slots) + 8:
                    return
            if nxt not in boundary:
                return
            if nxt == start:
                break
            cur = nxt
        else:
            return
        if len(walk) != len(boundary):
            return

        corners = []
        t_exp = 0
        for i, s in enumerate(walk):
            eid, to_end = self._dir(s)
            edge = self.diag.edges[eid]
            if edge.has_bp:
                t_exp += 1 if to_end == edge.head_end else -1
            if i + 1 < len(walk):
                v = vroot(head(s))
                if v in corner_class and v != root0:
                    cid, quad = corner_class[v]
                    corners.append((self.diag.crossings[cid].name, quad))

        key = self._canonical(walk)
        value = (
            (self.chord, pos_quad),
            tuple(corners),
            t_exp,
        )
        prev = self.results.setdefault(key, value)
        if prev != value:
            raise RuntimeError("canonical key collision (internal)")

    def _canonical(self, walk):
        relabel: dict = {}
        for c, _ in walk:
            if c not in relabel:
                relabel[c] = len(relabel)
        for c in range(len(self.copies)):
            if c not in relabel:
                relabel[c] = len(relabel)
        fids = tuple(self.copies[c] for c in sorted(relabel, key=relabel.get))
        pairs = frozenset(
            frozenset(((relabel[s[0]], s[1]), (relabel[t[0]], t[1])))
            for s, t in self.glued.items()
        )
        path = tuple((relabel[c], k) for c, k in walk)
        return (fids, pairs, path)


def oracle_disks(
    diag: LagrangianDiagram, chord: str, budget: int = 5_000_000
) -> list:
    """Multiset of (positive, corners, t_exp), found by exhaustive gluing."""
    return _Oracle(diag, chord, budget).run()


def compare_with_walker(diag, shadings, budget: int = 5_000_000) -> dict:
    """Run both disk finders over every chord and report agreement."""
    from .disks import enumerate_disks

    report = {"front": diag.front.to_text(), "chords": {}, "match": True}
    for name in diag.chord_names():
        walker = enumerate_disks(diag, shadings, name)
        w = sorted((d.positive, d.corners, d.t_exp) for d in walker)
        o = oracle_disks(diag, name, budget=budget)
        ok = w == o
        report["chords"][name] = {
            "walker": len(w),
            "oracle": len(o),
            "match": ok,
        }
        if not ok:
            report["match"] = False
            report["chords"][name]["walker_disks"] = [
                {"positive": list(p), "corners": [list(x) for x in cs], "t_exp": t}
                for p, cs, t in w
            ]
            report["chords"][name]["oracle_disks"] = [
                {"positive": list(p), "corners": [list(x) for x in cs], "t_exp": t}
                for p, cs, t in o
            ]
    return report
