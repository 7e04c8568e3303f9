"""Regenerate the golden fixtures under corpus/golden/.

One JSON file per front.  Disk multisets are cross-checked against the
brute-force oracle whenever the diagram has at most seven crossings; the
fixture records whether that check ran.  Output is canonical JSON, so the
files only change when the computed content does.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from legch import (  # noqa: E402
    build_dga,
    chord_gradings,
    both_shadings,
    enumerate_disks,
    find_augmentations,
    parse_front,
    poincare_set,
    resolve,
)
from legch.oracle import compare_with_walker  # noqa: E402
from legch.util import canonical_json, frac_to_str  # noqa: E402

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def disk_records(diag, shadings, name):
    out = []
    for d in enumerate_disks(diag, shadings, name):
        out.append(
            {
                "word": list(d.word),
                "t_exp": d.t_exp,
                "s_A": d.s_A,
                "s_B": d.s_B,
                "area": frac_to_str(d.area),
            }
        )
    out.sort(key=lambda r: (r["word"], r["t_exp"], r["s_A"], r["s_B"]))
    return out


def build_fixture(path: Path) -> dict:
    front = parse_front(path.read_text())
    diag = resolve(front)
    grading = chord_gradings(diag)
    shadings = both_shadings(diag, grading)

    fixture = {
        "front": front.to_text(),
        "name": front.name,
        "rotation": grading.rotation,
        "t_degree": grading.t_degree,
        "chords": {
            c.name: {
                "degree": grading.degree(c.name),
                "action": frac_to_str(diag.actions[c.name]),
            }
            for c in diag.crossings
        },
        "disks": {
            c.name: disk_records(diag, shadings, c.name)
            for c in diag.crossings
        },
    }

    oracle_checked = len(diag.crossings) <= 7
    if oracle_checked:
        report = compare_with_walker(diag, shadings)
        if not report["match"]:
            raise AssertionError(f"oracle mismatch on {path.name}: {report}")
    fixture["oracle_checked"] = oracle_checked

    for rule in "AB":
        dga = build_dga(diag, grading, shadings, rule=rule)
        fixture[f"differential_{rule}"] = {
            g: str(dga.diff[g]) for g in dga.generators
        }

    dga = build_dga(diag, grading, shadings, rule="A")
    aug_counts = {}
    for p in (2, 3, 5):
        aug_counts[f"Z_{p}"] = len(find_augmentations(dga, field=p))
    aug_counts["Z"] = len(find_augmentations(dga, field=None))
    fixture["augmentation_counts"] = aug_counts
    fixture["poincare_Z_2"] = [
        s.to_dict() for s in poincare_set(dga, field=2)
    ]
    fixture["poincare_Z"] = [
        s.to_dict() for s in poincare_set(dga, field=None)
    ]
    return fixture


def main():
    golden = CORPUS / "golden"
    golden.mkdir(exist_ok=True)
    for path in sorted(CORPUS.glob("*.front")):
        fixture = build_fixture(path)
        out = golden / (path.stem + ".json")
        out.write_text(canonical_json(fixture))
        print(f"{out.name}: {len(fixture['chords'])} chords, "
              f"oracle={'yes' if fixture['oracle_checked'] else 'no'}, "
              f"augs {fixture['augmentation_counts']}")


if __name__ == "__main__":
    main()
