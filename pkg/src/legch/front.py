"""Plat front words: parsing, validation, component counting.

A front word describes a Legendrian front read left to right as a sequence of
events acting on a stack of strands numbered from the top starting at 1:

    l<k>   left cusp inserting two new strands at positions k, k+1
    x<k>   transverse crossing of the strands at positions k, k+1
    r<k>   right cusp capping off the strands at positions k, k+1

Extras: `name <ident>` labels the word, `bp <gap>.<strand>` places the single
basepoint on the given strand in the gap after event number <gap> (1-based).
`#` starts a comment running to the end of the line.  The basepoint defaults
to strand 1 in the gap right after the first left cusp.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class FrontParseError(ValueError):
    """Raised when the text does not follow the front-word grammar."""


class TopologyError(ValueError):
    """Raised when a syntactically fine word fails a geometric sanity check
    (strand counts go negative, open ends remain, more than one component,
    basepoint off the strands)."""


_EVENT_RE = re.compile(r"^([lxr])([0-9]+)$")
_BP_RE = re.compile(r"^([0-9]+)\.([0-9]+)$")
_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


@dataclass(frozen=True)
class FrontWord:
    events: tuple[tuple[str, int], ...]
    basepoint: tuple[int, int]  # (gap index after that event, strand position)
    name: str | None = None
    # strand count in each gap: gap g sits after event g, gap 0 is empty space
    gap_sizes: tuple[int, ...] = field(default=(), compare=False)

    def to_text(self) -> str:
        parts = []
        if self.name:
            parts.append(f"name {self.name}")
        parts.extend(f"{kind}{pos}" for kind, pos in self.events)
        parts.append(f"bp {self.basepoint[0]}.{self.basepoint[1]}")
        return " ".join(parts)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_front(text: str) -> FrontWord:
    tokens = _strip_comments(text).split()
    if not tokens:
        raise FrontParseError("empty front word")

    name: str | None = None
    basepoint: tuple[int, int] | None = None
    events: list[tuple[str, int]] = []

    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "name":
            if name is not None:
                raise FrontParseError("duplicate name directive")
            if i + 1 >= len(tokens):
                raise FrontParseError("name directive missing its argument")
            name = tokens[i + 1]
            if not _NAME_RE.match(name):
                raise FrontParseError(f"bad name {name!r}")
            i += 2
            continue
        if tok == "bp":
            if basepoint is not None:
                raise FrontParseError("duplicate bp directive")
            if i + 1 >= len(tokens):
                raise FrontParseError("bp directive missing its argument")
            m = _BP_RE.match(tokens[i + 1])
            if not m:
                raise FrontParseError(
                    f"bp argument must be <gap>.<strand>, got {tokens[i + 1]!r}"
                )
            basepoint = (int(m.group(1)), int(m.group(2)))
            i += 2
            continue
        m = _EVENT_RE.match(tok)
        if not m:
            raise FrontParseError(f"unrecognized token {tok!r}")
        pos = int(m.group(2))
        if pos < 1:
            raise FrontParseError(f"positions are 1-based, got {tok!r}")
        events.append((m.group(1), pos))
        i += 1

    if not events:
        raise FrontParseError("front word has no events")

    gap_sizes = _validate_events(events)
    if basepoint is None:
        basepoint = (1, 1)
    _validate_basepoint(basepoint, events, gap_sizes)
    _require_single_component(events)
    return FrontWord(tuple(events), basepoint, name, tuple(gap_sizes))


def _validate_events(events: list[tuple[str, int]]) -> list[int]:
    n = 0
    gap_sizes = [0]
    for idx, (kind, pos) in enumerate(events, start=1):
        label = f"event {idx} ({kind}{pos})"
        if kind == "l":
            if pos > n + 1:
                raise TopologyError(f"{label}: insertion above strand range")
            n += 2
        elif kind == "x":
            if pos + 1 > n:
                raise TopologyError(f"{label}: needs strands {pos},{pos + 1}")
            # count unchanged
        elif kind == "r":
            if pos + 1 > n:
                raise TopologyError(f"{label}: needs strands {pos},{pos + 1}")
            n -= 2
        gap_sizes.append(n)
    if n != 0:
        raise TopologyError(f"{n} strands left open at the right end")
    return gap_sizes


def _validate_basepoint(
    bp: tuple[int, int], events: list[tuple[str, int]], gap_sizes: list[int]
) -> None:
    gap, strand = bp
    if gap < 1 or gap >= len(gap_sizes):
        raise TopologyError(f"basepoint gap {gap} out of range")
    if strand < 1 or strand > gap_sizes[gap]:
        raise TopologyError(
            f"basepoint strand {strand} not present in gap {gap} "
            f"(which has {gap_sizes[gap]} strands)"
        )


def _require_single_component(events: list[tuple[str, int]]) -> None:
    # Union-find over wire segments.  Cusps join the two strands they touch;
    # crossings just permute, so the class count equals the component count.
    parent: list[int] = []

    def make() -> int:
        parent.append(len(parent))
        return len(parent) - 1

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    stack: list[int] = []
    for kind, pos in events:
        k = pos - 1
        if kind == "l":
            w1, w2 = make(), make()
            union(w1, w2)
            stack[k:k] = [w1, w2]
        elif kind == "x":
            stack[k], stack[k + 1] = stack[k + 1], stack[k]
        else:
            union(stack[k], stack[k + 1])
            del stack[k : k + 2]

    roots = {find(w) for w in range(len(parent))}
    if len(roots) != 1:
        raise TopologyError(f"front has {len(roots)} components, need exactly 1")
