"""Small shared helpers: exact rationals as strings, canonical JSON."""

from __future__ import annotations

import json
from fractions import Fraction


def frac_to_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", always with an explicit denominator."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def frac_from_str(s: str) -> Fraction:
    num, _, den = s.partition("/")
    if not den:
        raise ValueError(f"rational must look like 'p/q', got {s!r}")
    return Fraction(int(num), int(den))


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, no float formatting surprises.

    All numeric payloads are ints or "p/q" strings, so plain json is stable.
    """
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
