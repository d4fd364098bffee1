"""Exact KL_alpha transform on polynomials, d-orthogonal families and their
structure, with floating-point cross-checks of the defining integrals."""
from .exact import GaussRat, Poly, TriMatrix, expand_in_basis, format_rat, parse_rat, rat
from .transform import kl_forward, kl_inverse, monomial_image
from .sequences import Mps, Recurrence
from .orthogonality import MomentFunctional, PearsonPair, classify, extract_structural

__all__ = [
    "GaussRat", "Poly", "TriMatrix", "expand_in_basis", "format_rat", "parse_rat", "rat",
    "kl_forward", "kl_inverse", "monomial_image", "Mps", "Recurrence",
    "MomentFunctional", "PearsonPair", "classify", "extract_structural",
]
__version__ = "0.1.0"
