"""Exact coefficient fields, sparse polynomials and univariate tools."""

from .poly import Poly, RatFunc, affine_substitute, compose, gradient, poly_vars
from .scalar import Tower, TowerElem, format_scalar, gaussian_unit, parse_scalar
from .univariate import (
    ZeroPolynomialError,
    gcd_uni,
    isolate_real_roots,
    positive_intervals,
    squarefree_decomposition,
    squarefree_part,
    squarefree_square_split,
    sturm_real_roots,
)

__all__ = [
    "Poly",
    "RatFunc",
    "Tower",
    "TowerElem",
    "ZeroPolynomialError",
    "affine_substitute",
    "compose",
    "format_scalar",
    "gaussian_unit",
    "gcd_uni",
    "gradient",
    "isolate_real_roots",
    "parse_scalar",
    "poly_vars",
    "positive_intervals",
    "squarefree_decomposition",
    "squarefree_part",
    "squarefree_square_split",
    "sturm_real_roots",
]
