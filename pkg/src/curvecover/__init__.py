"""Curves over finite fields: place counts, Jacobians, explicit double and
composite covers, and the lower-bound calculus for N_q(g) and A^-(q)."""

from .curves import (CurveModel, LPolynomial, Place, count_points, counts_from_l, find_place,
                     hyperelliptic, l_polynomial, parse_curve, place_count_nd, projective_line,
                     validate_and_genus, weil_verify)
from .gf import FieldCtx, FieldElem, make_field

__version__ = "0.1.0"

__all__ = [
    "CurveModel", "FieldCtx", "FieldElem", "LPolynomial", "Place", "count_points",
    "counts_from_l", "find_place", "hyperelliptic", "l_polynomial", "make_field", "parse_curve",
    "place_count_nd", "projective_line", "validate_and_genus", "weil_verify",
]
