"""Exact polynomial and rational-function arithmetic over Q."""

from .elimination import (
    SquareFreePart,
    bareiss_determinant,
    discriminant_wrt,
    poly_gcd,
    resultant,
    square_free_decomposition,
    sylvester_matrix,
)
from .poly import MultiPoly, symbols
from .ratfunc import RationalFunction, evaluate_rational, substitute_rational

__all__ = [
    "MultiPoly", "RationalFunction", "SquareFreePart", "bareiss_determinant",
    "discriminant_wrt", "evaluate_rational", "poly_gcd", "resultant",
    "square_free_decomposition", "substitute_rational", "sylvester_matrix", "symbols",
]
