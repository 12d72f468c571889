"""Exact tools for the polynomials X^a (X - A)^(n-a) + A and their iterates:
hypothesis search, local certificates, tree automorphism groups and
Frobenius statistics."""

__version__ = "0.1.0"

from .errors import BadReduction, DegreeCapError, DomainError, SizeGuardError
from .arith import INFINITY, factor, is_probable_prime, pm_decompose, vp
from .poly import PolyFp, PolyRat, X, discriminant, factor_mod_p, iterate, reduce_mod
from .params import OdoniParams, check_hypotheses, choose_a, search_A
from .certificates import build_poly

__all__ = [
    "BadReduction", "DegreeCapError", "DomainError", "SizeGuardError",
    "INFINITY", "factor", "is_probable_prime", "pm_decompose", "vp",
    "PolyFp", "PolyRat", "X", "discriminant", "factor_mod_p", "iterate", "reduce_mod",
    "OdoniParams", "check_hypotheses", "choose_a", "search_A", "build_poly",
]
