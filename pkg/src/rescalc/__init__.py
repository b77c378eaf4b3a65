"""rescalc: exact calculus of residue and principal value currents.

The engine works over rational coefficients in monomial coordinates:
currents are finite sums of elementary terms (principal value and residue
factors times polynomial-type form coefficients), restriction to
constructible sets is term selection by residue signature, and annihilator
modules of current vectors produce and verify minimal primary
decompositions of monomial ideals and componentwise monomial modules.
"""

from .calculus import (
    Monomial,
    coleff_herrera,
    common_zero_cells,
    is_monomial_complete_intersection,
    mul_monomial,
    mul_polynomial,
    pv_mul,
    res_mul,
    residue_pv_product,
)
from .constructible import (
    Cell,
    CellSet,
    Complement,
    CoordVariety,
    Difference,
    Empty,
    Full,
    Hyperplane,
    Intersection,
    SetExpr,
    Union,
    cells_of,
    min_cell_codim,
    restrict,
)
from .currents import (
    Current,
    ElementaryTerm,
    Factor,
    Kind,
    Piece,
    PolyCoeff,
    antiholomorphic_degrees,
    bidegree,
    bidegree_part,
    dbar,
    from_coeff,
    normalize,
    residue_signature,
    smooth_mul,
    support_codim_lower_bound,
    unit,
    zero,
)
from .decomposition import (
    ComponentReport,
    CurrentVector,
    DecompositionReport,
    Verdict,
    annihilator,
    decompose,
    duality_check,
    kills,
    leading_annihilator_check,
    prime_component,
    sep_check,
)
from .errors import (
    DimensionMismatch,
    DualityMismatch,
    EngineError,
    NonMonomialAnnihilator,
    ParseError,
)
from .grammar import (
    format_cells,
    format_current,
    format_ideal,
    format_module,
    format_monomial,
    format_prime,
    parse_current,
    parse_current_vector,
    parse_ideal,
    parse_module,
    parse_monomial_list,
    parse_set,
    parse_set_expr,
)
from .monomials import (
    MonomialIdeal,
    MonomialModule,
    MonomialPrime,
    primary_decomposition_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "CellSet",
    "Complement",
    "ComponentReport",
    "CoordVariety",
    "Current",
    "CurrentVector",
    "DecompositionReport",
    "Difference",
    "DimensionMismatch",
    "DualityMismatch",
    "ElementaryTerm",
    "Empty",
    "EngineError",
    "Factor",
    "Full",
    "Hyperplane",
    "Intersection",
    "Kind",
    "Monomial",
    "MonomialIdeal",
    "MonomialModule",
    "MonomialPrime",
    "NonMonomialAnnihilator",
    "ParseError",
    "Piece",
    "PolyCoeff",
    "SetExpr",
    "Union",
    "Verdict",
    "annihilator",
    "antiholomorphic_degrees",
    "bidegree",
    "bidegree_part",
    "cells_of",
    "coleff_herrera",
    "common_zero_cells",
    "dbar",
    "decompose",
    "duality_check",
    "format_cells",
    "format_current",
    "format_ideal",
    "format_module",
    "format_monomial",
    "format_prime",
    "from_coeff",
    "is_monomial_complete_intersection",
    "kills",
    "leading_annihilator_check",
    "min_cell_codim",
    "mul_monomial",
    "mul_polynomial",
    "normalize",
    "parse_current",
    "parse_current_vector",
    "parse_ideal",
    "parse_module",
    "parse_monomial_list",
    "parse_set",
    "parse_set_expr",
    "primary_decomposition_oracle",
    "prime_component",
    "pv_mul",
    "res_mul",
    "residue_pv_product",
    "residue_signature",
    "restrict",
    "sep_check",
    "smooth_mul",
    "support_codim_lower_bound",
    "unit",
    "zero",
]
