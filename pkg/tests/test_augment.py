"""Augmentation search: completeness, caps, threading, spin symmetry."""

from __future__ import annotations

import itertools

import pytest

from legch.algebra import specialize, spin_twist
from legch.homology import (
    Augmentation,
    SearchSpaceTooLarge,
    augmentation_support,
    find_augmentations,
    lch,
    linearize,
    poincare_set,
)


def brute_force_keys(dga, p):
    """Try every assignment and unit through Augmentation.check, which
    evaluates boundaries by a different code path than the search."""
    support = augmentation_support(dga)
    keys = set()
    for unit in range(1, p):
        for assign in itertools.product(range(p), repeat=len(support)):
            aug = Augmentation(dict(zip(support, assign)), unit, p)
            try:
                aug.check(dga)
            except ValueError:
                continue
            keys.add(aug.key())
    return keys


# ---------------------------------------------------------------------------
# support


def test_support_is_degree_zero_when_rotation_vanishes(corpus):
    dga = corpus.dga("trefoil-rh")
    assert augmentation_support(dga) == ["b1", "b2", "b3"]
    assert corpus.dga("chekanov-a").t_degree == 0


def test_support_uses_degree_mod_twice_rotation(corpus):
    dga = corpus.dga("unknot-stab")
    assert dga.t_degree == -2
    assert dga.degrees == {"b": -1, "a": 1}
    # both degrees are odd, so nothing survives mod 2
    assert augmentation_support(dga) == []


def test_unknot_has_no_assignable_generators(corpus):
    dga = corpus.dga("unknot")
    assert augmentation_support(dga) == []
    augs = find_augmentations(dga, 2)
    assert len(augs) == 1 and augs[0].t_value == 1


# ---------------------------------------------------------------------------
# completeness against brute force


@pytest.mark.parametrize("name", ["unknot", "unknot-stab", "trefoil-rh"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_search_matches_brute_force(corpus, name, p):
    dga = corpus.dga(name)
    found = {a.key() for a in find_augmentations(dga, p)}
    assert found == brute_force_keys(dga, p)


@pytest.mark.parametrize("p", [2, 3])
def test_search_matches_brute_force_chekanov(corpus, p):
    dga = corpus.dga("chekanov-a")
    found = {a.key() for a in find_augmentations(dga, p)}
    assert found == brute_force_keys(dga, p)


def test_every_found_augmentation_checks_out(corpus):
    dga = corpus.dga("chekanov-b")
    for p in (2, 3, 5):
        for aug in find_augmentations(dga, p):
            aug.check(dga)
    for aug in find_augmentations(dga, None):
        aug.check(dga)


# ---------------------------------------------------------------------------
# unit ranges per coefficient mode


def test_laurent_mode_tries_every_unit(corpus):
    dga = corpus.dga("unknot")
    augs = find_augmentations(dga, 5)
    # 1 + t = 0 forces t = 4 in Z_5
    assert [a.t_value for a in augs] == [4]


def test_t1_mode_pins_t_to_one(corpus):
    dga = specialize(corpus.dga("trefoil-rh"), "t1")
    augs = find_augmentations(dga, 2)
    assert len(augs) == 5 and {a.t_value for a in augs} == {1}
    # the two cusp boundaries sum to 2 at t = 1, so odd characteristic
    # leaves no solutions at all
    assert find_augmentations(dga, 3) == []
    assert find_augmentations(dga, 5) == []


def test_tm1_mode_pins_t_to_minus_one(corpus):
    dga = specialize(corpus.dga("trefoil-rh"), "tm1")
    augs = find_augmentations(dga, 5)
    assert {a.t_value for a in augs} == {4}
    # every laurent-mode augmentation of this knot already sends t to -1,
    # so pinning it loses nothing
    assert len(augs) == len(find_augmentations(corpus.dga("trefoil-rh"), 5))


def test_integral_t_values_are_units(corpus):
    for aug in find_augmentations(corpus.dga("chekanov-a"), None):
        assert aug.t_value in (1, -1)
        assert aug.field is None


def test_mod2_coefficients_refuse_odd_fields(corpus):
    dga = specialize(corpus.dga("trefoil-rh"), "mod2")
    with pytest.raises(ValueError, match="field must be 2"):
        find_augmentations(dga, 3)
    assert len(find_augmentations(dga, 2)) == 5


def test_non_prime_field_rejected(corpus):
    with pytest.raises(ValueError, match="prime"):
        find_augmentations(corpus.dga("unknot"), 4)


# ---------------------------------------------------------------------------
# caps and threads


def test_search_space_cap(corpus):
    dga = corpus.dga("chekanov-a")  # 5 assignable generators
    with pytest.raises(SearchSpaceTooLarge, match="exceed the cap"):
        find_augmentations(dga, 2, max_degree_zero=4)
    with pytest.raises(SearchSpaceTooLarge, match="exceed the cap"):
        find_augmentations(dga, None, max_degree_zero=4)
    assert issubclass(SearchSpaceTooLarge, ValueError)


@pytest.mark.parametrize("p", [2, 3])
def test_threads_do_not_change_results(corpus, p):
    dga = corpus.dga("chekanov-a")
    single = [a.key() for a in find_augmentations(dga, p, threads=1)]
    multi = [a.key() for a in find_augmentations(dga, p, threads=2)]
    assert single == multi


# ---------------------------------------------------------------------------
# validation errors


def test_check_rejects_value_outside_support(corpus):
    dga = corpus.dga("trefoil-rh")
    bad = Augmentation({"a1": 1}, 1, 2)
    with pytest.raises(ValueError, match="outside degree support"):
        bad.check(dga)


def test_check_rejects_non_unit_t(corpus):
    dga = corpus.dga("trefoil-rh")
    with pytest.raises(ValueError, match="unit"):
        Augmentation({}, 0, 2).check(dga)
    with pytest.raises(ValueError, match="integer unit"):
        Augmentation({}, 3, None).check(dga)


def test_check_rejects_unaugmented_boundary(corpus):
    dga = corpus.dga("unknot")
    # 1 + t with t = 1 gives 2, nonzero in Z_3
    with pytest.raises(ValueError, match="does not map to zero"):
        Augmentation({}, 1, 3).check(dga)


def test_key_and_dict_drop_zero_values():
    aug = Augmentation({"b1": 0, "b2": 1}, 1, 2)
    assert aug.key() == (1, (("b2", 1),))
    assert aug.to_dict() == {"field": 2, "t": 1, "values": {"b2": 1}}


# ---------------------------------------------------------------------------
# spin symmetry of the linearized homology


@pytest.mark.parametrize("name", ["chekanov-a", "chekanov-b", "trefoil-rh"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_poincare_set_survives_spin_twist(corpus, name, p):
    dga = corpus.dga(name)
    twisted = spin_twist(dga)
    before = [s.groups for s in poincare_set(dga, field=p)]
    after = [s.groups for s in poincare_set(twisted, field=p)]
    assert before == after


@pytest.mark.parametrize("p", [3, 5])
def test_twist_negates_augmentation_t_values(corpus, p):
    dga = corpus.dga("chekanov-a")
    plain = sorted(a.t_value for a in find_augmentations(dga, p))
    twisted = sorted(
        (-a.t_value) % p for a in find_augmentations(spin_twist(dga), p)
    )
    assert plain == twisted


# ---------------------------------------------------------------------------
# linearized homology values


def test_unknot_integral_lch(corpus):
    dga = corpus.dga("unknot")
    (aug,) = find_augmentations(dga, None)
    assert aug.t_value == -1
    summary = lch(dga, aug)
    assert str(summary) == "H_1 = Z"


def test_linearize_produces_chain_complex(corpus):
    dga = corpus.dga("chekanov-b")
    (aug,) = find_augmentations(dga, 2)
    cx = linearize(dga, aug)
    assert cx.homology().total_rank() == 3
