"""Exact Bézoutians, reduced Bézoutians and injectivity certificates
for polynomial endomorphisms of affine space over Q."""

__version__ = "0.1.0"

from .bezoutian import (
    BezoutianReport,
    CoefficientMatrix,
    bezoutian,
    coefficient_matrix,
    delta_matrix,
    delta_specialize,
    jacobian,
    reduced_bezoutian,
)
from .druzkowski import (
    DruzkowskiSpec,
    conjugate_search,
    from_matrix,
    permutation_conjugate,
    row_mult_conjugate,
    sample_reduced_bezoutians,
)
from .groebner import (
    INFINITE,
    GroebnerBasis,
    MonomialOrder,
    QuotientBasis,
    buchberger,
    is_unit_ideal,
    normal_form,
    quotient_dimension,
    standard_monomials,
)
from .injectivity import (
    InjectivityCertificate,
    Verdict,
    certify_global,
    certify_point,
    fiber_dimension_report,
)
from .parse import parse_polynomial, parse_system_file, render_polynomial
from .poly import Polynomial, PolyMatrix, PolySystem, RingContext

__all__ = [
    "BezoutianReport",
    "CoefficientMatrix",
    "DruzkowskiSpec",
    "GroebnerBasis",
    "INFINITE",
    "InjectivityCertificate",
    "MonomialOrder",
    "PolyMatrix",
    "PolySystem",
    "Polynomial",
    "QuotientBasis",
    "RingContext",
    "Verdict",
    "bezoutian",
    "buchberger",
    "certify_global",
    "certify_point",
    "coefficient_matrix",
    "conjugate_search",
    "delta_matrix",
    "delta_specialize",
    "fiber_dimension_report",
    "from_matrix",
    "is_unit_ideal",
    "jacobian",
    "normal_form",
    "parse_polynomial",
    "parse_system_file",
    "permutation_conjugate",
    "quotient_dimension",
    "reduced_bezoutian",
    "render_polynomial",
    "row_mult_conjugate",
    "sample_reduced_bezoutians",
    "standard_monomials",
]
