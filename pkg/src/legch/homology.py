"""Exact homology for the chord algebras: Smith normal form with unimodular
certificates, chain complexes, augmentations, linearized homology, critical
point complexes including a torsion family over the torus, and double-point
bound arithmetic.

Everything is exact: integers, prime fields as reduced integers, Fractions
where rational values appear.  Nothing here touches the diagram machinery;
inputs are presentations built elsewhere or plain integer matrices.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import AlgebraElement, DgaPresentation, LaurentInt


class SearchSpaceTooLarge(ValueError):
    """An exhaustive augmentation search would exceed the configured cap."""


class GradingMismatch(ValueError):
    """A boundary entry connects gradings that do not drop by one."""


LIFT_PRIMES = (2, 3, 5, 7)


# ---------------------------------------------------------------------------
# integer matrices


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Integer matrix product; also used to verify factorizations."""
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    oi[j] += x * bk[j]
    return out


def _smallest_entry(a, t: int):
    """Position of a least-magnitude nonzero entry of the block a[t:][t:]."""
    best = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            if row[j] and (best is None or abs(row[j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(matrix):
    """Diagonalize an integer matrix by invertible row and column moves.

    Returns (d, u, v) with u * matrix * v == d, where u and v are square
    unimodular matrices and d is diagonal with nonnegative entries forming a
    divisibility chain d[0][0] | d[1][1] | ...  Arbitrary-precision exact
    arithmetic throughout.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("ragged matrix")
    u = _identity(m)
    v = _identity(n)

    def row_sub(i, j, q):
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            for k in range(len(ri)):
                ri[k] -= q * rj[k]

    def col_sub(j, i, q):
        for mat in (a, v):
            for row in mat:
                row[j] -= q * row[i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def near_div(x, g):
        # quotient leaving the least-magnitude remainder, to limit growth;
        # divmod's remainder shares the sign of g, so the fix is always +1
        q, r = divmod(x, g)
        if 2 * abs(r) > abs(g):
            q += 1
        return q

    t = 0
    while t < min(m, n):
        pivot = _smallest_entry(a, t)
        if pivot is None:
            break
        while True:
            if pivot[0] != t:
                row_swap(t, pivot[0])
            if pivot[1] != t:
                col_swap(t, pivot[1])
            g = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    row_sub(i, t, near_div(a[i][t], g))
            for j in range(t + 1, n):
                if a[t][j]:
                    col_sub(j, t, near_div(a[t][j], g))
            if not any(a[i][t] for i in range(t + 1, m)) and not any(
                a[t][t + 1 :]
            ):
                break
            # leftover remainders are strictly smaller; re-anchor on one
            pivot = _smallest_entry(a, t)
        offender = None
        for i in range(t + 1, m):
            if any(x % a[t][t] for x in a[i][t + 1 :]):
                offender = i
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        if a[t][t] < 0:
            for mat in (a, u):
                mat[t] = [-x for x in mat[t]]
        t += 1
    return a, u, v


def _integer_rank(mat) -> int:
    d, _, _ = smith_normal_form(mat)
    return sum(1 for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i])


def _invariant_factors(mat) -> list[int]:
    d, _, _ = smith_normal_form(mat)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def _rank_mod_p(mat, p: int) -> int:
    rows = [[x % p for x in row] for row in mat]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for j in range(cols):
        src = next((i for i in range(rank, len(rows)) if rows[i][j]), None)
        if src is None:
            continue
        rows[rank], rows[src] = rows[src], rows[rank]
        inv = pow(rows[rank][j], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][j]:
                f = rows[i][j]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Graded free complex whose boundary drops the degree by one.

    generators: degree -> ordered generator names.
    boundaries: degree k -> matrix into degree k - 1; entry [i][j] is the
        coefficient of the i-th degree-(k-1) generator in the boundary of
        the j-th degree-k generator.
    field: None for integer coefficients, else a prime p for Z_p entries.
    shift: uniform offset added to every reported degree.
    alt_grading: optional second per-generator grading kept as metadata.
    """

    generators: dict[int, list[str]]
    boundaries: dict[int, list[list[int]]]
    field: int | None = None
    shift: int = 0
    alt_grading: dict[str, int] | None = None

    def __post_init__(self):
        self.validate()

    def dim(self, degree: int) -> int:
        return len(self.generators.get(degree, []))

    def degrees(self) -> list[int]:
        return sorted(self.generators)

    def boundary_matrix(self, degree: int) -> list[list[int]]:
        mat = self.boundaries.get(degree)
        if mat is None:
            return [[0] * self.dim(degree) for _ in range(self.dim(degree - 1))]
        return mat

    def validate(self) -> None:
        seen: set[str] = set()
        for k, gens in self.generators.items():
            for g in gens:
                if g in seen:
                    raise ValueError(f"generator {g} listed twice")
                seen.add(g)
        for k, mat in self.boundaries.items():
            rows, cols = self.dim(k - 1), self.dim(k)
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError(
                    f"boundary at degree {k} is {len(mat)} rows, wanted {rows}"
                )
        for k in self.degrees():
            square = mat_mul(self.boundary_matrix(k), self.boundary_matrix(k + 1))
            for row in square:
                for x in row:
                    if (x % self.field if self.field else x) != 0:
                        raise ValueError(
                            f"boundary squared is nonzero into degree {k - 1}"
                        )

    def homology(self) -> "HomologySummary":
        groups = {}
        for k in self.degrees():
            out_rank, (in_rank, torsion) = self._ranks_at(k)
            rank = self.dim(k) - out_rank - in_rank
            if rank or torsion:
                groups[k + self.shift] = (rank, tuple(torsion))
        return HomologySummary.from_groups(groups)

    def _ranks_at(self, k: int):
        outgoing = self.boundary_matrix(k)
        incoming = self.boundary_matrix(k + 1)
        if self.field is not None:
            return _rank_mod_p(outgoing, self.field), (
                _rank_mod_p(incoming, self.field),
                (),
            )
        factors = _invariant_factors(incoming)
        torsion = tuple(f for f in factors if f > 1)
        return _integer_rank(outgoing), (len(factors), torsion)

    def to_dict(self) -> dict:
        out = {
            "field": self.field,
            "shift": self.shift,
            "generators": {str(k): list(v) for k, v in sorted(self.generators.items())},
            "boundaries": {
                str(k): [list(r) for r in m] for k, m in sorted(self.boundaries.items())
            },
        }
        if self.alt_grading is not None:
            out["alt_grading"] = dict(sorted(self.alt_grading.items()))
        return out


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree free rank and torsion chain, nontrivial degrees only."""

    groups: tuple  # sorted tuples (degree, rank, (torsion, ...))

    @classmethod
    def from_groups(cls, groups: dict) -> "HomologySummary":
        items = []
        for k in sorted(groups):
            rank, torsion = groups[k]
            if rank < 0:
                raise ValueError(f"negative rank at degree {k}")
            if any(d < 2 for d in torsion):
                raise ValueError(f"torsion coefficients below 2 at degree {k}")
            if any(torsion[i + 1] % torsion[i] for i in range(len(torsion) - 1)):
                raise ValueError(f"torsion chain at degree {k} breaks divisibility")
            if rank or torsion:
                items.append((k, rank, tuple(torsion)))
        return cls(tuple(items))

    def rank(self, degree: int) -> int:
        return next((r for k, r, _ in self.groups if k == degree), 0)

    def torsion(self, degree: int) -> tuple:
        return next((t for k, _, t in self.groups if k == degree), ())

    def degrees(self) -> list[int]:
        return [k for k, _, _ in self.groups]

    def total_rank(self) -> int:
        return sum(r for _, r, _ in self.groups)

    def torsion_multiset(self) -> tuple:
        return tuple(sorted(d for _, _, t in self.groups for d in t))

    def shifted(self, offset: int) -> "HomologySummary":
        return HomologySummary(
            tuple((k + offset, r, t) for k, r, t in self.groups)
        )

    def group_string(self, degree: int) -> str:
        parts = []
        rank = self.rank(degree)
        if rank == 1:
            parts.append("Z")
        elif rank:
            parts.append(f"Z^{rank}")
        parts.extend(f"Z_{d}" for d in self.torsion(degree))
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        return "; ".join(f"H_{k} = {self.group_string(k)}" for k, _, _ in self.groups)

    def to_dict(self) -> dict:
        return {
            str(k): {"rank": r, "torsion": list(t)} for k, r, t in self.groups
        }


# ---------------------------------------------------------------------------
# augmentations


@dataclass
class Augmentation:
    """Unit-preserving ring map killing every boundary, supported on
    generators of degree 0 modulo twice the rotation number.

    values: generator -> field element (reduced ints mod field, or exact
        integers when field is None); t_value: image of t, a unit.
    """

    values: dict
    t_value: int
    field: int | None

    def value(self, name: str):
        return self.values.get(name, 0)

    def coeff_value(self, coeff: LaurentInt):
        if self.field is None:
            return coeff.eval_fraction(self.t_value)
        return coeff.eval_unit_mod(self.t_value % self.field, self.field)

    def evaluate(self, element: AlgebraElement):
        total = 0
        for word, coeff in element.terms.items():
            c = self.coeff_value(coeff)
            for g in word:
                if not c:
                    break
                c = c * self.value(g)
            total += c
        if self.field is not None:
            return total % self.field
        return total

    def check(self, dga: DgaPresentation) -> None:
        allowed = set(augmentation_support(dga))
        for g, x in self.values.items():
            if x and g not in allowed:
                raise ValueError(f"nonzero value on {g}, outside degree support")
        unit = self.t_value % self.field if self.field is not None else self.t_value
        if self.field is not None:
            if unit == 0:
                raise ValueError("t must map to a unit")
        elif unit not in (1, -1):
            raise ValueError("t must map to an integer unit")
        for g in dga.generators:
            if self.evaluate(dga.diff[g]) != 0:
                raise ValueError(f"boundary of {g} does not map to zero")

    def key(self) -> tuple:
        return (
            self.t_value,
            tuple(sorted((g, x) for g, x in self.values.items() if x)),
        )

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "t": self.t_value,
            "values": {g: x for g, x in sorted(self.values.items()) if x},
        }


def augmentation_support(dga: DgaPresentation) -> list[str]:
    """Generators allowed nonzero values: degree 0 modulo twice the rotation."""
    period = abs(dga.t_degree)
    out = []
    for g in dga.generators:
        d = dga.degrees[g]
        allowed = d == 0 if period == 0 else d % period == 0
        if allowed:
            out.append(g)
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def _compile_equations(dga: DgaPresentation, support: list[str]):
    """Per generator, the boundary terms whose letters all take values."""
    index = {g: i for i, g in enumerate(support)}
    eqs = []
    for g in dga.generators:
        terms = []
        for word, coeff in dga.diff[g].terms.items():
            spots = [index.get(h) for h in word]
            if None not in spots:
                terms.append((coeff, tuple(spots)))
        eqs.append(terms)
    return eqs


def _scan_block(eqs, support, p, unit, start, stop):
    valued = [
        [(v, spots) for coeff, spots in eq if (v := coeff.eval_unit_mod(unit, p))]
        for eq in eqs
    ]
    found = []
    grid = itertools.product(range(p), repeat=len(support))
    for assign in itertools.islice(grid, start, stop):
        for eq in valued:
            total = 0
            for v, spots in eq:
                for i in spots:
                    if not v:
                        break
                    v = v * assign[i]
                total += v
            if total % p:
                break
        else:
            found.append(Augmentation(dict(zip(support, assign)), unit, p))
    return found


def find_augmentations(
    dga: DgaPresentation,
    field: int | None = 2,
    *,
    max_degree_zero: int = 16,
    threads: int = 1,
) -> list[Augmentation]:
    """Every augmentation into Z_p (prime field) or, for field None, into the
    integers.

    Prime fields are searched exhaustively: all assignments to the allowed
    generators times all units for t.  The integer search checks, exactly,
    the symmetric lifts of the small-prime solutions (primes 2, 3, 5, 7),
    which covers every integral augmentation whose values land in that grid;
    solution sets with values outside it are reported only at grid points.
    Raises SearchSpaceTooLarge past the generator cap.
    """
    if field is None:
        return _integral_augmentations(dga, max_degree_zero)
    p = int(field)
    if not _is_prime(p):
        raise ValueError(f"field must be a prime or None, got {field}")
    if dga.coeff == "mod2" and p != 2:
        raise ValueError("coefficients are already mod 2; field must be 2")
    support = augmentation_support(dga)
    if len(support) > max_degree_zero:
        raise SearchSpaceTooLarge(
            f"{len(support)} assignable generators exceed the cap "
            f"of {max_degree_zero}"
        )
    units = range(1, p) if dga.coeff in ("laurent", "mod2") else (
        (1,) if dga.coeff == "t1" else (p - 1,)
    )
    eqs = _compile_equations(dga, support)
    total = p ** len(support)
    out = []
    for unit in units:
        if threads > 1:
            step = -(-total // threads)
            blocks = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = pool.map(
                    lambda se: _scan_block(eqs, support, p, unit, se[0], se[1]),
                    blocks,
                )
                for part in parts:
                    out.extend(part)
        else:
            out.extend(_scan_block(eqs, support, p, unit, 0, total))
    return out


def _symmetric_lift(v: int, p: int) -> list[int]:
    if v == 0:
        return [0]
    if p == 2:
        return [1, -1]
    return [v if v <= p // 2 else v - p]


def _integral_augmentations(dga: DgaPresentation, max_degree_zero: int):
    if dga.coeff == "mod2":
        raise ValueError("integral search needs integer coefficients")
    support = augmentation_support(dga)
    if len(support) > max_degree_zero:
        raise SearchSpaceTooLarge(
            f"{len(support)} assignable generators exceed the cap "
            f"of {max_degree_zero}"
        )
    candidates: dict[str, set[int]] = {g: {0} for g in support}
    for p in LIFT_PRIMES:
        for sol in find_augmentations(dga, p, max_degree_zero=max_degree_zero):
            for g in support:
                candidates[g].update(_symmetric_lift(sol.value(g), p))
    t_values = (1,) if dga.coeff == "t1" else (-1,) if dga.coeff == "tm1" else (1, -1)
    grid = 1
    for g in support:
        grid *= len(candidates[g])
    if grid * len(t_values) > 1_000_000:
        raise SearchSpaceTooLarge(f"{grid * len(t_values)} integral candidates")
    eqs = _compile_equations(dga, support)
    out = []
    for t_value in t_values:
        for assign in itertools.product(*(sorted(candidates[g]) for g in support)):
            ok = True
            for eq in eqs:
                total = Fraction(0)
                for coeff, spots in eq:
                    v = coeff.eval_fraction(t_value)
                    for i in spots:
                        if not v:
                            break
                        v = v * assign[i]
                    total += v
                if total:
                    ok = False
                    break
            if ok:
                out.append(Augmentation(dict(zip(support, assign)), t_value, None))
    return out


# ---------------------------------------------------------------------------
# linearization


def linearize(dga: DgaPresentation, aug: Augmentation) -> ChainComplex:
    """Word-length-one part of the differential after shifting every
    generator by its augmentation value; t specializes to the unit."""
    by_degree: dict[int, list[str]] = {}
    for g in dga.generators:
        by_degree.setdefault(dga.degrees[g], []).append(g)
    place = {
        g: (k, i) for k, gens in by_degree.items() for i, g in enumerate(gens)
    }
    mats = {
        k: [[0] * len(gens) for _ in by_degree.get(k - 1, [])]
        for k, gens in by_degree.items()
    }
    for g in dga.generators:
        k, col = place[g]
        constant = aug.coeff_value(LaurentInt.zero())
        for word, coeff in dga.diff[g].terms.items():
            c = aug.coeff_value(coeff)
            vals = [aug.value(h) for h in word]
            full = c
            for v in vals:
                if not full:
                    break
                full = full * v
            constant += full
            for i, h in enumerate(word):
                rest = c
                for j, v in enumerate(vals):
                    if j != i:
                        rest = rest * v
                    if not rest:
                        break
                if not rest:
                    continue
                dk, row = place[h]
                if dk != k - 1:
                    raise GradingMismatch(
                        f"length-one term {h} of d({g}) sits at degree {dk}"
                    )
                mats[k][row][col] += rest
        if (constant % aug.field if aug.field else constant) != 0:
            raise ValueError(f"assignment does not kill the boundary of {g}")
    for k, mat in mats.items():
        for row in mat:
            for j, x in enumerate(row):
                row[j] = _as_int(x, aug.field)
    return ChainComplex(generators=by_degree, boundaries=mats, field=aug.field)


def _as_int(x, p: int | None) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integer boundary entry {x}")
        x = x.numerator
    return x % p if p else x


def lch(dga: DgaPresentation, aug: Augmentation) -> HomologySummary:
    """Homology of the linearized complex of one augmentation."""
    return linearize(dga, aug).homology()


def poincare_set(
    dga: DgaPresentation,
    field: int | None = 2,
    *,
    max_degree_zero: int = 16,
    threads: int = 1,
) -> list[HomologySummary]:
    """Homology summaries across all augmentations, canonically sorted; the
    multiset is the comparison object for pairs of fronts."""
    augs = find_augmentations(
        dga, field, max_degree_zero=max_degree_zero, threads=threads
    )
    out = [lch(dga, a) for a in augs]
    out.sort(key=lambda s: s.groups)
    return out


# ---------------------------------------------------------------------------
# critical point complexes


def morse_complex(
    critical_points: list, boundary: list[list[int]], field: int | None = None
) -> ChainComplex:
    """Chain complex on labeled critical points, graded by index.

    critical_points: list of (name, index); boundary[i][j] is the
    coefficient of point i in the boundary of point j.  A nonzero entry
    whose indices do not drop by exactly one raises GradingMismatch.
    """
    names = [name for name, _ in critical_points]
    indices = {name: idx for name, idx in critical_points}
    n = len(names)
    if len(boundary) != n or any(len(row) != n for row in boundary):
        raise ValueError(f"boundary must be {n} x {n}")
    for i in range(n):
        for j in range(n):
            if boundary[i][j] and indices[names[i]] != indices[names[j]] - 1:
                raise GradingMismatch(
                    f"entry {names[i]} <- {names[j]} connects indices "
                    f"{indices[names[i]]} and {indices[names[j]]}"
                )
    by_degree: dict[int, list[str]] = {}
    for name in names:
        by_degree.setdefault(indices[name], []).append(name)
    pos = {name: by_degree[indices[name]].index(name) for name in names}
    mats = {
        k: [[0] * len(gens) for _ in by_degree.get(k - 1, [])]
        for k, gens in by_degree.items()
    }
    for i in range(n):
        for j in range(n):
            if boundary[i][j]:
                k = indices[names[j]]
                mats[k][pos[names[i]]][pos[names[j]]] = boundary[i][j]
    return ChainComplex(generators=by_degree, boundaries=mats, field=field)


def build_Lp_complex(n: int, p: int) -> ChainComplex:
    """Linearized complex of the two-copy torus family with parameter p.

    Generators are the critical points of a minimal self-indexing Morse
    function on the n-torus, comb(n, k) of index k, with the index-0 point
    replaced by a five-point cluster c0, c1, c2, c2p, c3 of Morse indices
    0, 1, 2, 2, 3.  The boundary vanishes on the torus points; on the
    cluster it sends c1 to p*c2 and c3 to p*c2p, so the homology carries
    Z_p twice.  The stored grading puts torus points at their Morse index
    and the cluster at n, 3, 2, n-2, n-1, making every boundary arrow drop
    the grading by one with c0 at n; raw Morse indices ship in alt_grading.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    by_degree: dict[int, list[str]] = {}
    alt: dict[str, int] = {}

    def add(name: str, degree: int, index: int) -> None:
        by_degree.setdefault(degree, []).append(name)
        alt[name] = index

    for k in range(1, n + 1):
        for i in range(1, comb(n, k) + 1):
            add(f"f{k}_{i}", k, k)
    add("c0", n, 0)
    add("c1", 3, 1)
    add("c2", 2, 2)
    add("c2p", n - 2, 2)
    add("c3", n - 1, 3)
    mats = {
        k: [[0] * len(gens) for _ in by_degree.get(k - 1, [])]
        for k, gens in by_degree.items()
    }
    for source, target in (("c1", "c2"), ("c3", "c2p")):
        k = next(d for d, gens in by_degree.items() if source in gens)
        row = by_degree[k - 1].index(target)
        col = by_degree[k].index(source)
        mats[k][row][col] = p
    return ChainComplex(
        generators=by_degree, boundaries=mats, field=None, alt_grading=alt
    )


# ---------------------------------------------------------------------------
# double-point arithmetic


def _total_dims(dims) -> int:
    values = list(dims.values()) if isinstance(dims, dict) else list(dims)
    if any(v < 0 for v in values):
        raise ValueError("homology dimensions must be nonnegative")
    return sum(values)


def double_point_bound(dims, field=None) -> int:
    """Half the total homology dimension, rounded up; the field tag rides
    along for reporting only."""
    del field
    return -(-_total_dims(dims) // 2)


def k_spin(chords: int, dims, k: int = 1):
    """Product with a k-sphere: twice the chords, homology tensored with
    one class at 0 and one at k."""
    if chords < 0:
        raise ValueError("chord count must be nonnegative")
    if k < 1:
        raise ValueError("sphere dimension must be positive")
    base = dims if isinstance(dims, dict) else dict(enumerate(dims))
    out: dict[int, int] = {}
    for d, v in base.items():
        if v < 0:
            raise ValueError("homology dimensions must be nonnegative")
        out[d] = out.get(d, 0) + v
        out[d + k] = out.get(d + k, 0) + v
    return 2 * chords, {d: out[d] for d in sorted(out) if out[d]}


def improve_bound(K: int, dims) -> int:
    """Remove an additive constant from the double-point estimate by
    spinning until the rounded bound stabilizes at half the total."""
    if K < 0:
        raise ValueError("the constant must be nonnegative")
    total = _total_dims(dims)
    target = -(-total // 2)
    exponent = 0
    while 2**exponent <= K:
        exponent += 1
    while True:
        numerator = 2**exponent * total - 2 * K
        bound = -(-numerator // 2 ** (exponent + 1))
        if bound == target:
            return bound
        exponent += 1
