"""p-ranks, automorphism groups and stratum dimensions of curves over finite fields."""
from .curves import (
    INF,
    ArtinSchreierCover,
    CurveError,
    HyperellipticCurve,
    as_reduce,
    count_points,
    make_hyperelliptic,
)
from .ffpoly import EnvelopeError, FieldElement, FieldSpec, Matrix, Poly, parse_poly
from .hyperaut import classify_involutions, has_order_ell, reduced_aut
from .prank import cartier_matrix, l_polynomial, prank, zeta_prank

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ArtinSchreierCover",
    "CurveError",
    "EnvelopeError",
    "FieldElement",
    "FieldSpec",
    "HyperellipticCurve",
    "Matrix",
    "Poly",
    "as_reduce",
    "cartier_matrix",
    "classify_involutions",
    "count_points",
    "has_order_ell",
    "l_polynomial",
    "make_hyperelliptic",
    "parse_poly",
    "prank",
    "reduced_aut",
    "zeta_prank",
]
