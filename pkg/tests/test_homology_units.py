"""ChainComplex, HomologySummary, Morse complexes and the surgery family."""

import pytest

from legch.homology import (
    ChainComplex,
    GradingMismatch,
    HomologySummary,
    build_Lp_complex,
    morse_complex,
)


def circle():
    return morse_complex([("min", 0), ("max", 1)], [[0, 0], [0, 0]])


def test_circle_homology():
    s = circle().homology()
    assert s.rank(0) == 1 and s.rank(1) == 1
    assert s.torsion_multiset() == ()
    assert str(s) == "H_0 = Z; H_1 = Z"


def test_sphere_from_two_cells():
    # minimal Morse function on S^2: indexes 0 and 2, empty boundary
    s = morse_complex([("min", 0), ("max", 2)], [[0, 0], [0, 0]]).homology()
    assert s.rank(0) == 1 and s.rank(2) == 1 and s.rank(1) == 0


def test_disk_gadget_collapses():
    # five critical points whose boundary wipes out everything above degree 0
    pts = [("c0", 0), ("c1", 0), ("c2", 1), ("c2p", 1), ("c3", 2)]
    p = 5
    bnd = [
        [0, 0, 0, 0, 0],
        [0, 0, p, 1, 0],
        [0, 0, 0, 0, -1],
        [0, 0, 0, 0, p],
        [0, 0, 0, 0, 0],
    ]
    s = morse_complex(pts, bnd).homology()
    assert s.groups == (((0, 1, ()),))


def test_morse_index_gap_rejected():
    with pytest.raises(GradingMismatch):
        morse_complex([("a", 0), ("b", 2)], [[0, 1], [0, 0]])


def test_dual_complex_matches_torsion():
    mat = [[2, 4], [4, 2]]
    cx = ChainComplex(
        generators={0: ("x", "y"), 1: ("u", "v")}, boundaries={1: mat}
    )
    dual = ChainComplex(
        generators={0: ("u*", "v*"), 1: ("x*", "y*")},
        boundaries={1: [list(r) for r in zip(*mat)]},
    )
    assert cx.homology().torsion_multiset() == dual.homology().torsion_multiset()


def test_homology_summary_json_shape():
    s = HomologySummary.from_groups({0: (1, (2, 4)), 3: (2, ())})
    assert s.to_dict() == {
        "0": {"rank": 1, "torsion": [2, 4]},
        "3": {"rank": 2, "torsion": []},
    }
    assert s.group_string(0) == "Z + Z_2 + Z_4"
    assert s.total_rank() == 3
    assert s.shifted(2).degrees() == [2, 5]


def test_from_groups_validates():
    with pytest.raises(ValueError):
        HomologySummary.from_groups({0: (-1, ())})
    with pytest.raises(ValueError):
        HomologySummary.from_groups({0: (0, (1,))})
    with pytest.raises(ValueError):
        HomologySummary.from_groups({0: (0, (4, 2))})  # no divisibility


def test_d_squared_enforced():
    with pytest.raises(ValueError):
        ChainComplex(
            generators={0: ("a",), 1: ("b",), 2: ("c",)},
            boundaries={1: [[1]], 2: [[1]]},
        )


@pytest.mark.parametrize("n", [4, 5, 8])
@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_surgery_family_torsion(n, p):
    s = build_Lp_complex(n, p).homology()
    if p == 1:
        assert s.torsion_multiset() == ()
        return
    assert s.torsion_multiset() == (p, p)
    degs = sorted(d for d in s.degrees() if s.torsion(d))
    assert degs == sorted({2, n - 2})


def test_surgery_family_mod2_reduction():
    """Over Z_2 the odd-p families all look alike and p=2 differs."""

    def mod2_ranks(p):
        cx = build_Lp_complex(6, p)
        cx2 = ChainComplex(
            generators=dict(cx.generators),
            boundaries={k: [list(r) for r in m] for k, m in cx.boundaries.items()},
            field=2,
        )
        s = cx2.homology()
        return tuple((d, s.rank(d)) for d in s.degrees())

    assert mod2_ranks(3) == mod2_ranks(5) == mod2_ranks(7)
    assert mod2_ranks(2) != mod2_ranks(3)


def test_surgery_family_rejects_small_n():
    with pytest.raises(ValueError):
        build_Lp_complex(3, 2)
    with pytest.raises(ValueError):
        build_Lp_complex(5, 0)
