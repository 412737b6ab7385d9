"""Exact multiplicity sequences and equisingularity decisions for surface germs."""

from .errors import (
    INFINITE,
    NotRegularError,
    ParseError,
    PolyError,
    PrecisionExhaustedError,
    SingularMatrixError,
    TrialsExhaustedError,
    ZeqError,
    ZeroToPrecision,
)
from .mpoly import MPoly, arith, substitute_linear
from .series import TruncSeries, series_invert_unit
from .polygcd import gcd, squarefree_part
from .weier import PrecisionBudget, WPoly, regularity, weierstrass, with_adequate_precision
from .disc import (
    DiscChain,
    SylvesterData,
    discriminant,
    generalized_discriminants,
    idiscr,
    lemma_a1_constant,
    resultant,
    root_formula_oracle,
    sylvester,
)
from .equising import (
    CoordChange,
    EquisingReport,
    MultiplicitySequence,
    NuTransverseReport,
    SurfaceGerm,
    check_nu_transverse,
    coordinate_invariance_test,
    equimultiple_along_params,
    family_zariski_equisingular,
    local_discriminant,
    multiplicity_sequence,
    nu_star_constant,
    nu_transverse_ze,
    search_nu_transverse,
    semicontinuity_sample,
    theorem1_harness,
)
from .isolated import (
    LiteratureData,
    PlaneCurveGerm,
    check_formula_43,
    check_formula_a,
    milnor_plane_curve,
    mu2_mu1,
    prop44_check,
)
from .parser import parse_poly, poly_to_string

__all__ = [
    "INFINITE", "ZeroToPrecision", "ZeqError", "PolyError", "ParseError",
    "NotRegularError", "PrecisionExhaustedError", "TrialsExhaustedError",
    "SingularMatrixError",
    "MPoly", "TruncSeries", "arith", "substitute_linear", "series_invert_unit",
    "gcd", "squarefree_part",
    "PrecisionBudget", "WPoly", "regularity", "weierstrass", "with_adequate_precision",
    "DiscChain", "SylvesterData", "sylvester", "discriminant",
    "generalized_discriminants", "idiscr", "lemma_a1_constant", "resultant",
    "root_formula_oracle",
    "SurfaceGerm", "CoordChange", "MultiplicitySequence", "NuTransverseReport",
    "EquisingReport", "local_discriminant", "check_nu_transverse",
    "search_nu_transverse", "multiplicity_sequence", "equimultiple_along_params",
    "family_zariski_equisingular", "nu_transverse_ze", "nu_star_constant",
    "theorem1_harness", "coordinate_invariance_test", "semicontinuity_sample",
    "PlaneCurveGerm", "LiteratureData", "milnor_plane_curve", "mu2_mu1",
    "check_formula_a", "check_formula_43", "prop44_check",
    "parse_poly", "poly_to_string",
]

__version__ = "0.1.0"
