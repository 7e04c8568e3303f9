"""Free noncommutative graded algebra over Z[t, t^-1] and the differential.

Generators are the chords of a diagram.  The variable t is a central
coefficient of degree minus twice the rotation number; a bounding spin
structure twists it by t -> -t.  The differential of a chord sums its rigid
disks: sign times t to the basepoint winding times the negative corner word.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import LagrangianDiagram
from .grading import GradingData


class DegreeError(ValueError):
    """A degree bookkeeping rule was violated."""


class NonHomogeneousError(DegreeError):
    """An operation needed a homogeneous element but got mixed degrees."""


class SelfReferenceError(ValueError):
    """A replacement value mentions the generator it replaces."""


# ---------------------------------------------------------------------------
# coefficients


class LaurentInt:
    """Integer Laurent polynomial in t, kept free of zero coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {int(e): int(v) for e, v in (coeffs or {}).items() if v}

    @classmethod
    def zero(cls) -> "LaurentInt":
        return cls()

    @classmethod
    def const(cls, n: int) -> "LaurentInt":
        return cls({0: n})

    @classmethod
    def t_power(cls, exp: int, coeff: int = 1) -> "LaurentInt":
        return cls({exp: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other: "LaurentInt") -> "LaurentInt":
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentInt(out)

    def __neg__(self) -> "LaurentInt":
        return LaurentInt({e: -v for e, v in self.c.items()})

    def __sub__(self, other: "LaurentInt") -> "LaurentInt":
        return self + (-other)

    def __mul__(self, other: "LaurentInt") -> "LaurentInt":
        out: dict = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentInt(out)

    def scale(self, n: int) -> "LaurentInt":
        return LaurentInt({e: n * v for e, v in self.c.items()})

    def twist(self) -> "LaurentInt":
        """The substitution t -> -t."""
        return LaurentInt({e: v if e % 2 == 0 else -v for e, v in self.c.items()})

    def subs_int(self, t_value: int) -> "LaurentInt":
        if t_value not in (1, -1):
            raise ValueError("only t = 1 or t = -1 stays integral")
        total = sum(v if t_value == 1 or e % 2 == 0 else -v for e, v in self.c.items())
        return LaurentInt.const(total)

    def mod(self, m: int) -> "LaurentInt":
        return LaurentInt({e: v % m for e, v in self.c.items()})

    def eval_unit_mod(self, unit: int, p: int) -> int:
        """Value at t = unit in Z_p; unit must be invertible mod p."""
        total = 0
        for e, v in self.c.items():
            total += v * pow(unit, e % (p - 1) if p > 2 else 0, p)
        return total % p

    def eval_fraction(self, unit):
        from fractions import Fraction

        total = Fraction(0)
        for e, v in self.c.items():
            total += v * Fraction(unit) ** e
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentInt) and self.c == other.c

    __hash__ = None

    def __repr__(self) -> str:
        return f"LaurentInt({self.c!r})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
                continue
            tp = "t" if e == 1 else f"t^{e}"
            if v == 1:
                parts.append(tp)
            elif v == -1:
                parts.append(f"-{tp}")
            else:
                parts.append(f"{v}*{tp}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_dict(self) -> dict:
        return {str(e): v for e, v in sorted(self.c.items())}


# ---------------------------------------------------------------------------
# elements


class AlgebraElement:
    """Formal sum of words in the generators with LaurentInt coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(coeff, LaurentInt):
                coeff = LaurentInt.const(coeff)
            if not coeff.is_zero():
                self.terms[tuple(word)] = coeff

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls({(): LaurentInt.const(1)})

    @classmethod
    def gen(cls, name: str) -> "AlgebraElement":
        return cls({(name,): LaurentInt.const(1)})

    @classmethod
    def monomial(cls, coeff: LaurentInt, word) -> "AlgebraElement":
        return cls({tuple(word): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return AlgebraElement(out)

    def scale(self, coeff: LaurentInt) -> "AlgebraElement":
        return AlgebraElement({w: coeff * c for w, c in self.terms.items()})

    def map_coeffs(self, f) -> "AlgebraElement":
        return AlgebraElement({w: f(c) for w, c in self.terms.items()})

    def subs_gens(self, images: dict) -> "AlgebraElement":
        """Extend name -> AlgebraElement multiplicatively over each word."""
        out = AlgebraElement.zero()
        for word, coeff in self.terms.items():
            prod = AlgebraElement.one()
            for name in word:
                prod = prod * images[name]
            out = out + prod.scale(coeff)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgebraElement({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            coeff = self.terms[word]
            cs = str(coeff)
            ws = "*".join(word)
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append(ws)
            elif cs == "-1":
                parts.append(f"-{ws}")
            elif len(coeff.c) > 1:
                parts.append(f"({cs})*{ws}")
            else:
                parts.append(f"{cs}*{ws}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json(self) -> list:
        return [
            [self.terms[w].to_dict(), list(w)]
            for w in sorted(self.terms, key=lambda w: (len(w), w))
        ]


# ---------------------------------------------------------------------------
# presentations

COEFF_MODES = ("laurent", "t1", "tm1", "mod2")


@dataclass
class DgaPresentation:
    front: str
    generators: list[str]
    degrees: dict[str, int]
    diff: dict[str, AlgebraElement]
    rotation: int
    t_degree: int  # degree of t: minus twice the rotation number
    sign_rule: str  # 'A' or 'B'
    spin: str  # 'lie' or 'bounding'
    coeff: str  # one of COEFF_MODES
    actions: dict = field(default_factory=dict)

    # -- degrees -----------------------------------------------------------
    def monomial_degree(self, word, exp: int) -> int:
        return sum(self.degrees[g] for g in word) + self.t_degree * exp

    def degree_of(self, x: AlgebraElement) -> int | None:
        """Exact degree of a homogeneous element; None for zero."""
        degs = {
            self.monomial_degree(w, e)
            for w, c in x.terms.items()
            for e in c.c
        }
        if not degs:
            return None
        if len(degs) > 1:
            raise NonHomogeneousError(f"degrees {sorted(degs)} mixed in {x}")
        return degs.pop()

    # -- coefficient modes --------------------------------------------------
    def reduce(self, x: AlgebraElement) -> AlgebraElement:
        if self.coeff == "laurent":
            return x
        if self.coeff == "t1":
            return x.map_coeffs(lambda c: c.subs_int(1))
        if self.coeff == "tm1":
            return x.map_coeffs(lambda c: c.subs_int(-1))
        if self.coeff == "mod2":
            return x.map_coeffs(lambda c: c.mod(2))
        raise ValueError(f"unknown coefficient mode {self.coeff!r}")

    def to_dict(self) -> dict:
        return {
            "front": self.front,
            "generators": [
                {"name": g, "degree": self.degrees[g]} for g in self.generators
            ],
            "differential": {g: self.diff[g].to_json() for g in self.generators},
            "tags": {
                "sign_rule": self.sign_rule,
                "spin": self.spin,
                "coeff": self.coeff,
                "rotation": self.rotation,
                "t_degree": self.t_degree,
            },
        }


def build_dga(
    diag: LagrangianDiagram,
    grading: GradingData,
    shadings: dict,
    rule: str = "A",
    spin: str = "lie",
    coeff: str = "laurent",
    budget: int = 500_000,
) -> DgaPresentation:
    """Differential from the rigid disk counts, one generator per chord."""
    from .disks import disk_sign, enumerate_disks

    if rule not in ("A", "B"):
        raise ValueError("rule must be 'A' or 'B'")
    if spin not in ("lie", "bounding"):
        raise ValueError("spin must be 'lie' or 'bounding'")
    if coeff not in COEFF_MODES:
        raise ValueError(f"coeff must be one of {COEFF_MODES}")

    t_degree = grading.t_degree
    pres = DgaPresentation(
        front=diag.front.to_text(),
        generators=list(diag.chord_names()),
        degrees=dict(grading.degrees),
        diff={},
        rotation=grading.rotation,
        t_degree=t_degree,
        sign_rule=rule,
        spin=spin,
        coeff=coeff,
        actions=dict(diag.actions),
    )
    for name in pres.generators:
        target = pres.degrees[name] - 1
        total = AlgebraElement.zero()
        for d in enumerate_disks(diag, shadings, name, budget=budget):
            got = sum(pres.degrees[b] for b in d.word) + t_degree * d.t_exp
            if got != target:
                raise DegreeError(
                    f"disk at {name} has degree {got}, wanted {target}: "
                    f"word {d.word}, t^{d.t_exp}"
                )
            sign = disk_sign(d, rule)
            if spin == "bounding" and d.t_exp % 2:
                sign = -sign
            total = total + AlgebraElement.monomial(
                LaurentInt.t_power(d.t_exp, sign), d.word
            )
        pres.diff[name] = pres.reduce(total)
    return pres


def apply_leibniz(dga: DgaPresentation, x: AlgebraElement) -> AlgebraElement:
    """The unique derivation extending the differential, term by term."""
    out = AlgebraElement.zero()
    for word, coeff in x.terms.items():
        prefix_deg = 0
        for i, g in enumerate(word):
            sign = -1 if prefix_deg % 2 else 1
            piece = AlgebraElement.monomial(coeff.scale(sign), word[:i])
            piece = piece * dga.diff[g]
            piece = piece * AlgebraElement.monomial(
                LaurentInt.const(1), word[i + 1 :]
            )
            out = out + piece
            prefix_deg += dga.degrees[g]
    return dga.reduce(out)


def check_d_squared(dga: DgaPresentation) -> dict:
    """Compute every d(d(g)); nonzero residues are reported, not raised."""
    residues = {}
    for g in dga.generators:
        contribs: dict = {}
        total = AlgebraElement.zero()
        dg = dga.diff[g]
        for word, coeff in dg.terms.items():
            prefix_deg = 0
            for i, h in enumerate(word):
                sign = -1 if prefix_deg % 2 else 1
                piece = AlgebraElement.monomial(coeff.scale(sign), word[:i])
                piece = piece * dga.diff[h]
                piece = piece * AlgebraElement.monomial(
                    LaurentInt.const(1), word[i + 1 :]
                )
                piece = dga.reduce(piece)
                total = total + piece
                for w in piece.terms:
                    contribs.setdefault(w, []).append(["*".join(word) or "1", i])
                prefix_deg += dga.degrees[h]
        total = dga.reduce(total)
        if not total.is_zero():
            residues[g] = {
                "residue": str(total),
                "paths": {
                    "*".join(w) or "1": contribs.get(w, []) for w in total.terms
                },
            }
    return {"ok": not residues, "residues": residues}


def spin_twist(dga: DgaPresentation) -> DgaPresentation:
    """Substitute t -> -t, trading the two spin structures."""
    if dga.coeff != "laurent":
        raise ValueError("spin twist needs full laurent coefficients")
    return DgaPresentation(
        front=dga.front,
        generators=list(dga.generators),
        degrees=dict(dga.degrees),
        diff={g: e.map_coeffs(lambda c: c.twist()) for g, e in dga.diff.items()},
        rotation=dga.rotation,
        t_degree=dga.t_degree,
        sign_rule=dga.sign_rule,
        spin="bounding" if dga.spin == "lie" else "lie",
        coeff=dga.coeff,
        actions=dict(dga.actions),
    )


def specialize(dga: DgaPresentation, coeff: str) -> DgaPresentation:
    """Apply a coefficient mode to a laurent presentation."""
    if dga.coeff != "laurent":
        raise ValueError("specialize only from laurent coefficients")
    if coeff not in COEFF_MODES:
        raise ValueError(f"coeff must be one of {COEFF_MODES}")
    out = DgaPresentation(
        front=dga.front,
        generators=list(dga.generators),
        degrees=dict(dga.degrees),
        diff=dict(dga.diff),
        rotation=dga.rotation,
        t_degree=dga.t_degree,
        sign_rule=dga.sign_rule,
        spin=dga.spin,
        coeff=coeff,
        actions=dict(dga.actions),
    )
    out.diff = {g: out.reduce(e) for g, e in out.diff.items()}
    return out


def stabilize(dga: DgaPresentation, degree: int) -> DgaPresentation:
    """Add a canceling generator pair e0 (given degree) and e1 = d(e0)."""
    base = "e"
    i = 0
    while f"{base}{i}" in dga.degrees or f"{base}{i + 1}" in dga.degrees:
        i += 2
    n0, n1 = f"{base}{i}", f"{base}{i + 1}"
    out = DgaPresentation(
        front=dga.front,
        generators=dga.generators + [n0, n1],
        degrees={**dga.degrees, n0: degree, n1: degree - 1},
        diff={**dga.diff, n0: AlgebraElement.gen(n1), n1: AlgebraElement.zero()},
        rotation=dga.rotation,
        t_degree=dga.t_degree,
        sign_rule=dga.sign_rule,
        spin=dga.spin,
        coeff=dga.coeff,
        actions=dict(dga.actions),
    )
    return out


def tame_automorphism(
    dga: DgaPresentation, g: str, v: AlgebraElement
) -> DgaPresentation:
    """Conjugate the differential by the replacement g -> g + v."""
    if g not in dga.degrees:
        raise KeyError(g)
    if any(g in word for word in v.terms):
        raise SelfReferenceError(f"replacement value for {g} mentions {g}")
    deg_v = dga.degree_of(v)
    if deg_v is not None and deg_v != dga.degrees[g]:
        raise DegreeError(
            f"replacement degree {deg_v} does not match |{g}| = {dga.degrees[g]}"
        )
    images = {h: AlgebraElement.gen(h) for h in dga.generators}
    images[g] = AlgebraElement.gen(g) + v
    new_diff = {}
    for h in dga.generators:
        src = dga.diff[h]
        if h == g:
            src = src - apply_leibniz(dga, v)
        new_diff[h] = dga.reduce(src.subs_gens(images))
    return DgaPresentation(
        front=dga.front,
        generators=list(dga.generators),
        degrees=dict(dga.degrees),
        diff=new_diff,
        rotation=dga.rotation,
        t_degree=dga.t_degree,
        sign_rule=dga.sign_rule,
        spin=dga.spin,
        coeff=dga.coeff,
        actions=dict(dga.actions),
    )
