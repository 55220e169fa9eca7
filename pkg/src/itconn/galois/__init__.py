"""Finite Galois workbench: theta-rings, Hopf tables, torsor checks."""

from .constants import ConstantsReport, ring_constants, square_constants
from .examples import (
    alpalp_coaction,
    alpalp_ring,
    gm_ring,
    gm_symbolic_ring,
    ideal_bijection_check,
    mupmup_coaction,
    mupmup_ring,
    mu_k_defining_polynomial_separable,
    reduced_and_separable,
    theta_simplicity,
)
from .hopf import HopfAlgebra, HopfIdeal, LaurentHopf
from .rings import ADDITIVE, DIAGONAL, GROUPLIKE, GenSpec, RElem, ThetaRing
from .workbench import (
    Coaction,
    RKG,
    TensorSquare,
    Torsor,
    build_torsor_gamma,
    invariance_test,
    invariant_subalgebra,
    span_equal,
    theta_stable,
)

__all__ = [
    "ConstantsReport",
    "ring_constants",
    "square_constants",
    "alpalp_coaction",
    "alpalp_ring",
    "gm_ring",
    "gm_symbolic_ring",
    "ideal_bijection_check",
    "mupmup_coaction",
    "mupmup_ring",
    "mu_k_defining_polynomial_separable",
    "reduced_and_separable",
    "theta_simplicity",
    "HopfAlgebra",
    "HopfIdeal",
    "LaurentHopf",
    "ADDITIVE",
    "DIAGONAL",
    "GROUPLIKE",
    "GenSpec",
    "RElem",
    "ThetaRing",
    "Coaction",
    "RKG",
    "TensorSquare",
    "Torsor",
    "build_torsor_gamma",
    "invariance_test",
    "invariant_subalgebra",
    "span_equal",
    "theta_stable",
]
