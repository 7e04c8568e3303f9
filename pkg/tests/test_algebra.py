"""Algebra layer: coefficients, elements, derivations, presentations."""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_path

from legch.algebra import (
    AlgebraElement,
    DegreeError,
    LaurentInt,
    NonHomogeneousError,
    SelfReferenceError,
    apply_leibniz,
    check_d_squared,
    specialize,
    spin_twist,
    stabilize,
    tame_automorphism,
)
from legch.diagram import resolve
from legch.front import parse_front
from legch.grading import chord_gradings, shade
from legch.algebra import build_dga, DgaPresentation


@lru_cache(maxsize=None)
def trefoil_dga() -> DgaPresentation:
    diag = resolve(parse_front(corpus_path("trefoil-rh").read_text()))
    grading = chord_gradings(diag)
    shadings = {r: shade(diag, grading, r) for r in "AB"}
    return build_dga(diag, grading, shadings)


# ---------------------------------------------------------------------------
# LaurentInt


def test_laurent_str_forms():
    one = LaurentInt.const(1)
    t = LaurentInt.t_power(1)
    assert str(LaurentInt.zero()) == "0"
    assert str(one + t) == "1 + t"
    assert str(one - t) == "1 - t"
    assert str(LaurentInt.t_power(-1)) == "t^-1"
    assert str(LaurentInt.t_power(2, -3)) == "-3*t^2"
    assert str(-t) == "-t"


def test_laurent_arithmetic():
    t = LaurentInt.t_power(1)
    two = LaurentInt.const(2)
    assert (t + t) == t.scale(2)
    assert (t - t).is_zero()
    assert (t * t) == LaurentInt.t_power(2)
    assert (two * t) == LaurentInt.t_power(1, 2)


def test_laurent_twist_negates_odd_powers():
    f = LaurentInt({-1: 1, 0: 2, 1: 3, 2: 4})
    g = f.twist()
    assert g == LaurentInt({-1: -1, 0: 2, 1: -3, 2: 4})
    assert g.twist() == f


def test_laurent_substitutions():
    f = LaurentInt({0: 1, 1: 1})  # 1 + t
    assert f.subs_int(1) == LaurentInt.const(2)
    assert f.subs_int(-1).is_zero()
    assert LaurentInt({0: 3, 1: 2}).mod(2) == LaurentInt.const(1)
    assert LaurentInt({0: 2}).mod(2).is_zero()
    assert f.eval_unit_mod(4, 5) == 0  # 1 + 4 mod 5


@given(
    st.dictionaries(
        st.integers(-3, 3), st.integers(-9, 9), max_size=4
    ),
    st.dictionaries(
        st.integers(-3, 3), st.integers(-9, 9), max_size=4
    ),
    st.integers(-3, 3),
)
def test_laurent_mul_commutes_with_eval(ca, cb, x):
    if x == 0:
        x = 1
    a, b = LaurentInt(ca), LaurentInt(cb)
    lhs = (a * b).eval_fraction(x)
    rhs = a.eval_fraction(x) * b.eval_fraction(x)
    assert lhs == rhs


# ---------------------------------------------------------------------------
# AlgebraElement


def test_element_str_ordering():
    x = (
        AlgebraElement.gen("b2")
        + AlgebraElement.gen("b1")
        + AlgebraElement.one()
    )
    assert str(x) == "1 + b1 + b2"


def test_element_str_coefficient_wrapping():
    c = LaurentInt({0: 1, 1: 1})
    x = AlgebraElement.monomial(c, ("b1",))
    assert str(x) == "(1 + t)*b1"
    y = AlgebraElement.monomial(LaurentInt.const(-1), ("b1", "b2"))
    assert str(y) == "-b1*b2"


def test_element_multiplication_is_word_concatenation():
    ab = AlgebraElement.gen("a") * AlgebraElement.gen("b")
    assert list(ab.terms) == [("a", "b")]
    ba = AlgebraElement.gen("b") * AlgebraElement.gen("a")
    assert ab != ba  # noncommutative


def test_element_zero_coefficients_drop_out():
    x = AlgebraElement.gen("a") - AlgebraElement.gen("a")
    assert x.is_zero()
    assert x == AlgebraElement.zero()


def test_subs_gens_is_multiplicative():
    x = AlgebraElement.gen("a") * AlgebraElement.gen("b")
    images = {
        "a": AlgebraElement.gen("u") + AlgebraElement.one(),
        "b": AlgebraElement.gen("v"),
    }
    y = x.subs_gens(images)
    assert y == (images["a"] * images["b"])


# ---------------------------------------------------------------------------
# derivation property


def words_strategy():
    gens = st.sampled_from(["a1", "a2", "b1", "b2", "b3"])
    return st.lists(gens, max_size=3).map(tuple)


def monomials():
    return st.builds(
        lambda w, e, c: AlgebraElement.monomial(LaurentInt.t_power(e, c), w),
        words_strategy(),
        st.integers(-2, 2),
        st.integers(-3, 3).filter(bool),
    )


@settings(max_examples=150, deadline=None)
@given(monomials(), monomials())
def test_leibniz_product_rule(x, y):
    dga = trefoil_dga()
    (word,) = x.terms or ((),)
    parity = sum(dga.degrees[g] for g in word) % 2
    sign = -1 if parity else 1
    lhs = apply_leibniz(dga, x * y)
    rhs = apply_leibniz(dga, x) * y + x.scale(
        LaurentInt.const(sign)
    ) * apply_leibniz(dga, y)
    assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(monomials())
def test_derivation_squares_to_zero_on_words(x):
    dga = trefoil_dga()
    assert apply_leibniz(dga, apply_leibniz(dga, x)).is_zero()


def test_leibniz_lowers_degree_by_one():
    dga = trefoil_dga()
    x = AlgebraElement.gen("a1") * AlgebraElement.gen("a2")
    dx = apply_leibniz(dga, x)
    assert dga.degree_of(x) == 2
    assert dga.degree_of(dx) == 1


# ---------------------------------------------------------------------------
# degrees


def test_degree_of_zero_is_none():
    assert trefoil_dga().degree_of(AlgebraElement.zero()) is None


def test_degree_of_mixed_raises():
    dga = trefoil_dga()
    x = AlgebraElement.gen("a1") + AlgebraElement.gen("b1")
    with pytest.raises(NonHomogeneousError):
        dga.degree_of(x)


def test_monomial_degree_counts_t():
    dga = trefoil_dga()
    base = dga.monomial_degree(("a1",), 0)
    assert dga.monomial_degree(("a1",), 3) == base + 3 * dga.t_degree
    assert dga.t_degree == -2 * dga.rotation


# ---------------------------------------------------------------------------
# d^2 diagnostics


def broken_dga() -> DgaPresentation:
    return DgaPresentation(
        front="synthetic",
        generators=["x", "y"],
        degrees={"x": 1, "y": 0},
        diff={"x": AlgebraElement.gen("y"), "y": AlgebraElement.one()},
        rotation=0,
        t_degree=0,
        sign_rule="A",
        spin="lie",
        coeff="laurent",
    )


def test_check_d_squared_reports_residue():
    report = check_d_squared(broken_dga())
    assert report["ok"] is False
    assert list(report["residues"]) == ["x"]
    res = report["residues"]["x"]
    assert res["residue"] == "1"
    assert res["paths"] == {"1": [["y", 0]]}


def test_check_d_squared_clean_corpus_dga():
    report = check_d_squared(trefoil_dga())
    assert report == {"ok": True, "residues": {}}


# ---------------------------------------------------------------------------
# presentation surgery


def test_spin_twist_is_involutive():
    dga = trefoil_dga()
    twisted = spin_twist(dga)
    assert twisted.spin == "bounding"
    back = spin_twist(twisted)
    assert back.spin == "lie"
    assert all(back.diff[g] == dga.diff[g] for g in dga.generators)


def test_spin_twist_requires_laurent():
    with pytest.raises(ValueError, match="laurent"):
        spin_twist(specialize(trefoil_dga(), "t1"))


def test_specialize_modes_on_unknot():
    diag = resolve(parse_front("l1 r1"))
    grading = chord_gradings(diag)
    shadings = {r: shade(diag, grading, r) for r in "AB"}
    dga = build_dga(diag, grading, shadings)
    assert str(dga.diff["a"]) == "1 + t"
    assert str(specialize(dga, "t1").diff["a"]) == "2"
    assert specialize(dga, "tm1").diff["a"].is_zero()
    # mod2 keeps the t variable, only the integer coefficients drop mod 2
    assert str(specialize(dga, "mod2").diff["a"]) == "1 + t"


def test_specialize_rejects_double_application():
    once = specialize(trefoil_dga(), "t1")
    with pytest.raises(ValueError, match="laurent"):
        specialize(once, "mod2")
    with pytest.raises(ValueError, match="coeff"):
        specialize(trefoil_dga(), "padic")


def test_stabilize_adds_canceling_pair():
    dga = stabilize(trefoil_dga(), 5)
    assert dga.generators[-2:] == ["e0", "e1"]
    assert dga.degrees["e0"] == 5 and dga.degrees["e1"] == 4
    assert dga.diff["e0"] == AlgebraElement.gen("e1")
    assert dga.diff["e1"].is_zero()
    assert check_d_squared(dga)["ok"]
    again = stabilize(dga, -1)
    assert again.generators[-2:] == ["e2", "e3"]


def test_tame_automorphism_preserves_d_squared():
    dga = trefoil_dga()
    moved = tame_automorphism(dga, "b1", AlgebraElement.one())
    assert check_d_squared(moved)["ok"]
    moved2 = tame_automorphism(dga, "b1", AlgebraElement.gen("b2"))
    assert check_d_squared(moved2)["ok"]


def test_tame_automorphism_validation():
    dga = trefoil_dga()
    with pytest.raises(SelfReferenceError):
        tame_automorphism(dga, "b1", AlgebraElement.gen("b1"))
    with pytest.raises(DegreeError):
        tame_automorphism(dga, "b1", AlgebraElement.gen("a1"))
    with pytest.raises(KeyError):
        tame_automorphism(dga, "zz", AlgebraElement.one())


# ---------------------------------------------------------------------------
# randomized fronts keep d^2 = 0


@st.composite
def closed_words(draw):
    events = []
    n = 0
    for _ in range(draw(st.integers(min_value=2, max_value=8))):
        kinds = ["l"] if n < 2 else ["l", "x", "x", "x", "r"]
        kind = draw(st.sampled_from(kinds))
        if kind == "l":
            pos = draw(st.integers(1, n + 1))
            n += 2
        else:
            pos = draw(st.integers(1, n - 1))
            if kind == "r":
                n -= 2
        events.append(f"{kind}{pos}")
    while n > 0:
        pos = 1 if n == 2 else draw(st.integers(1, n - 1))
        events.append(f"r{pos}")
        n -= 2
    return " ".join(events)


@settings(max_examples=60, deadline=None)
@given(closed_words(), st.sampled_from(["A", "B"]))
def test_random_fronts_satisfy_d_squared(text, rule):
    from legch.front import TopologyError

    try:
        diag = resolve(parse_front(text))
    except TopologyError:
        return
    grading = chord_gradings(diag)
    shadings = {r: shade(diag, grading, r) for r in "AB"}
    dga = build_dga(diag, grading, shadings, rule=rule)
    assert check_d_squared(dga)["ok"], f"front {text!r} rule {rule}"
