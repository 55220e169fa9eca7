"""Exact arithmetic foundation: F_p, polynomials, rational functions,
matrices, Lucas binomials and Frobenius utilities."""

from .fields import Fp, PrimeField, QQ, RationalField
from .frob import binomial_mod_p, binom_int, lowest_nonzero_digit
from .linalg import Mat, solve_linear
from .multipoly import MPoly, MPolyRing
from .parse import parse_mpoly, parse_poly, parse_ratfunc, render_ratfunc
from .poly import Poly, render_poly
from .ratfunc import RatFunc, RatFuncField

__all__ = [
    "Fp",
    "PrimeField",
    "QQ",
    "RationalField",
    "binomial_mod_p",
    "binom_int",
    "lowest_nonzero_digit",
    "Mat",
    "solve_linear",
    "MPoly",
    "MPolyRing",
    "parse_mpoly",
    "parse_poly",
    "parse_ratfunc",
    "render_ratfunc",
    "Poly",
    "render_poly",
    "RatFunc",
    "RatFuncField",
]
