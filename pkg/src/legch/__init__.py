"""Chord algebras of Legendrian knots from plat front words.

Parse a front, resolve it to an exact planar diagram, enumerate the rigid
disks, and build the signed differential graded algebra over integer Laurent
coefficients; then search augmentations, take linearized homology over Z or
a prime field, and evaluate double-point bounds.
"""

from .algebra import (
    COEFF_MODES,
    AlgebraElement,
    DegreeError,
    DgaPresentation,
    LaurentInt,
    NonHomogeneousError,
    SelfReferenceError,
    apply_leibniz,
    build_dga,
    check_d_squared,
    specialize,
    spin_twist,
    stabilize,
    tame_automorphism,
)
from .diagram import LagrangianDiagram, RealizationError, resolve
from .disks import (
    DiskCW,
    SearchBudgetExceeded,
    both_shadings,
    disk_sign,
    enumerate_disks,
)
from .front import FrontParseError, FrontWord, TopologyError, parse_front
from .grading import GradingData, Shading, chord_gradings, rotation_number, shade
from .homology import (
    Augmentation,
    ChainComplex,
    GradingMismatch,
    HomologySummary,
    SearchSpaceTooLarge,
    augmentation_support,
    build_Lp_complex,
    double_point_bound,
    find_augmentations,
    improve_bound,
    k_spin,
    lch,
    linearize,
    morse_complex,
    poincare_set,
    smith_normal_form,
)
from .oracle import OracleBudgetExceeded, compare_with_walker, oracle_disks

__version__ = "0.1.0"


def dga_from_text(
    text: str,
    rule: str = "A",
    spin: str = "lie",
    coeff: str = "laurent",
    budget: int = 500_000,
) -> DgaPresentation:
    """One-call pipeline: front text to a signed differential algebra."""
    diag = resolve(parse_front(text))
    grading = chord_gradings(diag)
    shadings = both_shadings(diag, grading)
    return build_dga(diag, grading, shadings, rule, spin, coeff, budget)


__all__ = [
    "AlgebraElement",
    "Augmentation",
    "COEFF_MODES",
    "ChainComplex",
    "DegreeError",
    "DgaPresentation",
    "DiskCW",
    "FrontParseError",
    "FrontWord",
    "GradingData",
    "GradingMismatch",
    "HomologySummary",
    "LagrangianDiagram",
    "LaurentInt",
    "NonHomogeneousError",
    "OracleBudgetExceeded",
    "RealizationError",
    "SearchBudgetExceeded",
    "SearchSpaceTooLarge",
    "SelfReferenceError",
    "Shading",
    "TopologyError",
    "apply_leibniz",
    "augmentation_support",
    "both_shadings",
    "build_Lp_complex",
    "build_dga",
    "chord_gradings",
    "check_d_squared",
    "compare_with_walker",
    "dga_from_text",
    "disk_sign",
    "double_point_bound",
    "enumerate_disks",
    "find_augmentations",
    "improve_bound",
    "k_spin",
    "lch",
    "linearize",
    "morse_complex",
    "oracle_disks",
    "parse_front",
    "poincare_set",
    "resolve",
    "rotation_number",
    "shade",
    "smith_normal_form",
    "specialize",
    "spin_twist",
    "stabilize",
    "tame_automorphism",
]
