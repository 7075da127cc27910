"""Exact scalars, polynomials and linear algebra."""
from .factor import Factorization, IncompleteFactorization, factor, irreducible_polys, is_irreducible
from .fields import (
    CyclotomicField,
    ExtensionField,
    Field,
    FieldDescriptor,
    FieldError,
    GF,
    GFq,
    PrimeField,
    QZeta,
    Scalar,
    evaluate_expression,
    make_field,
    parse_field,
    primitive_root_of_unity,
    roots_of_unity,
)
from .linalg import (
    InconsistentSystem,
    SingularMatrix,
    canonical_basis,
    inverse,
    minimal_polynomial,
    nullspace,
    rank,
    rref,
    solve,
)
from .poly import UniPoly, format_poly, poly_gcd, poly_lcm, poly_xgcd
from .qbinom import q_binomial, q_binomial_row

# alternate name
poly_factor = factor

__all__ = [
    "CyclotomicField", "ExtensionField", "Factorization", "Field", "FieldDescriptor", "FieldError",
    "GF", "GFq", "IncompleteFactorization", "InconsistentSystem", "PrimeField", "QZeta", "Scalar",
    "SingularMatrix", "UniPoly", "canonical_basis", "factor", "format_poly", "inverse",
    "irreducible_polys", "is_irreducible", "make_field", "minimal_polynomial", "nullspace",
    "parse_field", "poly_factor", "poly_gcd", "poly_lcm", "poly_xgcd", "primitive_root_of_unity",
    "q_binomial", "q_binomial_row", "evaluate_expression", "rank", "roots_of_unity", "rref", "solve",
]
