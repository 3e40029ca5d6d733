"""Exact scalars, polynomials and linear algebra over Q(i)."""

from .gaussian import GaussianRational, I, conj, exact, format_scalar, parse_scalar
from .linalg import (
    RowReducer,
    as_matrix,
    charpoly,
    det,
    identity,
    inverse,
    matmul,
    nullspace,
    rank,
    solve,
    zeros,
)
from .polynomial import Polynomial, compose_linear, evaluate, gradient

__all__ = [
    "GaussianRational",
    "I",
    "conj",
    "exact",
    "format_scalar",
    "parse_scalar",
    "Polynomial",
    "compose_linear",
    "evaluate",
    "gradient",
    "RowReducer",
    "as_matrix",
    "charpoly",
    "det",
    "identity",
    "inverse",
    "matmul",
    "nullspace",
    "rank",
    "solve",
    "zeros",
]
