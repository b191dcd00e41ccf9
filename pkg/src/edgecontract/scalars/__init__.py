"""Exact coefficient arithmetic."""
from .laurent import LaurentPoly, parse_laurent, q, v
from .quad import QuadScalar, sign, sqrt_int, two_cos_pi_over
from .monomial import geometric_quotient
from .rank import bareiss_rank, rank_over_fraction_field

__all__ = [
    "LaurentPoly",
    "parse_laurent",
    "q",
    "v",
    "QuadScalar",
    "sign",
    "sqrt_int",
    "two_cos_pi_over",
    "geometric_quotient",
    "bareiss_rank",
    "rank_over_fraction_field",
]
