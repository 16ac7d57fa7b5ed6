"""Multi-twisted Reed-Solomon codes over GF(2^m) towers.

Construction and validation of twisted RS codes, explicit duals over
multiplicative evaluation groups, brute-force twist decoding, Schur-square
structural analysis, and a McEliece-style cryptosystem demo with security
estimators. Research artifact: see the README for the (deliberately loud)
non-goals before pointing this at anything that matters.
"""

from ._backend import BACKEND
from .gf import FieldElement, FieldTower, enumerate_field
from .poly import (
    NEG_INF,
    Poly,
    euclid_step_sequence,
    eval_vector,
    interpolate,
    poly_mul_mod,
    vanishing_poly,
)
from .rng import StreamRNG

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldElement",
    "FieldTower",
    "NEG_INF",
    "Poly",
    "StreamRNG",
    "__version__",
    "enumerate_field",
    "euclid_step_sequence",
    "eval_vector",
    "interpolate",
    "poly_mul_mod",
    "vanishing_poly",
]
