"""Rigid disk enumeration: shapes, the area identity, budgets, determinism."""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import CORPUS_NAMES

from legch.disks import SearchBudgetExceeded, disk_sign, enumerate_disks
from legch.oracle import OracleBudgetExceeded, oracle_disks


def all_disks(corpus, name):
    _, diag, _, shadings = corpus.stages(name)
    for chord in diag.chord_names():
        for d in enumerate_disks(diag, shadings, chord):
            yield diag, d


# ---------------------------------------------------------------------------
# unknot specifics


def test_unknot_has_exactly_two_disks(corpus):
    _, diag, _, shadings = corpus.stages("unknot")
    disks = list(enumerate_disks(diag, shadings, "a"))
    assert len(disks) == 2
    assert all(d.chord == "a" for d in disks)
    assert all(d.word == () for d in disks)
    assert sorted(d.t_exp for d in disks) == [0, 1]
    # a disk with no negative corners fills the whole chord action
    assert all(d.area == diag.actions["a"] for d in disks)
    assert all(d.positive[0] == "a" for d in disks)


# ---------------------------------------------------------------------------
# structural invariants across the corpus


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_area_identity(corpus, name):
    count = 0
    for diag, d in all_disks(corpus, name):
        negatives = sum((diag.actions[c] for c in d.word), Fraction(0))
        assert d.area == diag.actions[d.chord] - negatives
        assert d.area > 0
        count += 1
    assert count > 0


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_word_matches_corner_sequence(corpus, name):
    for _, d in all_disks(corpus, name):
        assert d.word == tuple(c for c, _ in d.corners)
        assert d.t_exp >= 0


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_sign_is_parity_of_shaded_corner_count(corpus, name):
    for _, d in all_disks(corpus, name):
        assert d.s_A >= 0 and d.s_B >= 0
        assert disk_sign(d, "A") == (-1 if d.s_A % 2 else 1)
        assert disk_sign(d, "B") == (-1 if d.s_B % 2 else 1)
    with pytest.raises(ValueError, match="rule"):
        disk_sign(d, "C")


def test_enumeration_is_deterministic(corpus):
    _, diag, _, shadings = corpus.stages("chekanov-a")
    first = list(enumerate_disks(diag, shadings, "a1"))
    second = list(enumerate_disks(diag, shadings, "a1"))
    assert first == second


# ---------------------------------------------------------------------------
# budgets


def test_search_budget_raises(corpus):
    _, diag, _, shadings = corpus.stages("chekanov-a")
    with pytest.raises(SearchBudgetExceeded, match="exceeded"):
        for chord in diag.chord_names():
            list(enumerate_disks(diag, shadings, chord, budget=2))


def test_search_budget_is_runtime_error():
    assert issubclass(SearchBudgetExceeded, RuntimeError)
    assert issubclass(OracleBudgetExceeded, RuntimeError)


def test_oracle_budget_raises(corpus):
    _, diag, _, _ = corpus.stages("trefoil-rh")
    with pytest.raises(OracleBudgetExceeded):
        oracle_disks(diag, "a1", budget=3)


def test_oracle_agrees_on_unknot(corpus):
    _, diag, _, shadings = corpus.stages("unknot")
    walker = sorted(
        (d.positive, d.corners, d.t_exp)
        for d in enumerate_disks(diag, shadings, "a")
    )
    assert walker == oracle_disks(diag, "a")
