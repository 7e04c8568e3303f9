"""Enumerate small plat front words and fingerprint them, to pick corpus
entries: a left trefoil, a pair of same-classical-invariant fronts told
apart by augmentation homology, and two 6-crossing fronts.  Development
tooling; deterministic output, no randomness.
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from knotid import jones_key, skeleton, thurston_bennequin  # noqa: E402
from legch.front import FrontParseError, TopologyError, parse_front  # noqa: E402
from legch.grading import rotation_number  # noqa: E402

# Jones keys in the A variable (t = A^-4) for knots we want to recognize.
UNKNOT = ((0, 1),)
RIGHT_TREFOIL = tuple(sorted({-16: -1, -12: 1, -4: 1}.items()))
LEFT_TREFOIL = tuple(sorted({16: -1, 12: 1, 4: 1}.items()))
# 5_2 and its mirror: V = t^-1 - t^-2 + 2t^-3 - t^-4 + t^-5 - t^-6
FIVE_TWO = tuple(sorted({4: 1, 8: -1, 12: 2, 16: -1, 20: 1, 24: -1}.items()))
FIVE_TWO_MIRROR = tuple(sorted((-e, c) for e, c in FIVE_TWO))

NAMED = {
    UNKNOT: "unknot",
    RIGHT_TREFOIL: "trefoil-rh",
    LEFT_TREFOIL: "trefoil-lh",
    FIVE_TWO: "5_2",
    FIVE_TWO_MIRROR: "m(5_2)",
}


def words(n_left: int, n_cross: int):
    """All single-diagram plat words with the given cusp and crossing
    budget, first event pinned to l1.  Yields space-joined strings.
    """
    out: list[str] = []

    def rec(seq, width, lefts, crossings, rights):
        if not (lefts or crossings or rights):
            out.append(" ".join(seq))
            return
        if width == 0 and seq:
            return  # closed off early: extra events would start a new piece
        if lefts:
            top = width + 1 if seq else 1  # pin the first event to l1
            for k in range(1, top + 1):
                seq.append(f"l{k}")
                rec(seq, width + 2, lefts - 1, crossings, rights)
                seq.pop()
        if crossings and width >= 2:
            for k in range(1, width):
                seq.append(f"x{k}")
                rec(seq, width, lefts, crossings - 1, rights)
                seq.pop()
        if rights and width >= 2:
            for k in range(1, width):
                seq.append(f"r{k}")
                rec(seq, width - 2, lefts, crossings, rights - 1)
                seq.pop()

    rec([], 0, n_left, n_cross, n_left)
    return out


def fingerprint_all(n_left: int, n_cross: int):
    """Group parseable words by (tb, |r|, jones); returns dict of lists."""
    groups: dict[tuple, list[str]] = defaultdict(list)
    for text in words(n_left, n_cross):
        try:
            parse_front(text)
        except (FrontParseError, TopologyError):
            continue
        diag = skeleton(text)
        key = (
            thurston_bennequin(diag),
            abs(rotation_number(diag)),
            jones_key(diag),
        )
        groups[key].append(text)
    return groups


def poincare_fingerprint(text: str):
    from legch import dga_from_text
    from legch.homology import SearchSpaceTooLarge, poincare_set

    dga = dga_from_text(text, rule="A", spin="lie", coeff="mod2")
    try:
        return tuple(s.groups for s in poincare_set(dga, field=2))
    except SearchSpaceTooLarge:
        return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--left", type=int, default=2)
    ap.add_argument("--cross", type=int, default=5)
    ap.add_argument("--deep", action="store_true",
                    help="augmentation-homology pass on repeated-key groups")
    ap.add_argument("--jones", choices=sorted(NAMED.values()),
                    help="only show groups matching this knot")
    ap.add_argument("--limit", type=int, default=6,
                    help="words shown per group")
    args = ap.parse_args()

    groups = fingerprint_all(args.left, args.cross)
    total = sum(len(v) for v in groups.values())
    print(f"{total} words in {len(groups)} (tb, |r|, jones) classes")

    wanted = None
    if args.jones:
        wanted = {k for k, v in NAMED.items() if v == args.jones}

    for key in sorted(groups, key=lambda k: (k[0], k[1], k[2]), reverse=True):
        tb, rot, jones = key
        if wanted is not None and jones not in wanted:
            continue
        name = NAMED.get(jones, "?")
        members = sorted(groups[key])
        print(f"\ntb {tb}  |r| {rot}  {name}  jones {dict(jones)}  "
              f"[{len(members)} words]")
        for w in members[: args.limit]:
            print(f"  {w}")
        if args.deep and len(members) > 1 and rot == 0:
            seen: dict[tuple, str] = {}
            for w in members:
                fp = poincare_fingerprint(w)
                if fp not in seen:
                    seen[fp] = w
                    print(f"  distinct homology {fp}: {w}")


if __name__ == "__main__":
    main()
