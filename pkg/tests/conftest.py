"""Shared corpus plumbing: parse, resolve and build each front once."""

from pathlib import Path

import pytest

from legch import (
    build_dga,
    both_shadings,
    chord_gradings,
    parse_front,
    resolve,
)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN_DIR = CORPUS_DIR / "golden"

CORPUS_NAMES = (
    "unknot",
    "unknot-stab",
    "trefoil-rh",
    "trefoil-lh",
    "chekanov-a",
    "chekanov-b",
    "six-a",
    "six-b",
)


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / f"{name}.front"


class CorpusCache:
    """Builds pipeline stages lazily and keeps them for the whole session."""

    def __init__(self):
        self._stages: dict = {}
        self._dgas: dict = {}

    def stages(self, name: str):
        if name not in self._stages:
            front = parse_front(corpus_path(name).read_text())
            diag = resolve(front)
            grading = chord_gradings(diag)
            shadings = both_shadings(diag, grading)
            self._stages[name] = (front, diag, grading, shadings)
        return self._stages[name]

    def dga(self, name: str, rule: str = "A", spin: str = "lie",
            coeff: str = "laurent"):
        key = (name, rule, spin, coeff)
        if key not in self._dgas:
            _, diag, grading, shadings = self.stages(name)
            self._dgas[key] = build_dga(
                diag, grading, shadings, rule=rule, spin=spin, coeff=coeff
            )
        return self._dgas[key]


@pytest.fixture(scope="session")
def corpus() -> CorpusCache:
    return CorpusCache()
