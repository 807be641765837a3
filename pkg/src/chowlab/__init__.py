"""Chow rings of matroids, KLS theory of weakly ranked posets, and checks of
the direct-sum decompositions of (augmented) Chow rings."""

from ._core import BACKEND
from .chow import build_model
from .matroid import (Matroid, boolean_matroid, contraction, direct_sum, from_flats, from_json,
                      restriction, uniform_matroid)
from .poly import IntPolynomial
from .poset import aug_chow_polynomial, chow_polynomial, kl_polynomial

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "IntPolynomial", "Matroid", "aug_chow_polynomial", "boolean_matroid",
    "build_model", "chow_polynomial", "contraction", "direct_sum", "from_flats", "from_json",
    "kl_polynomial", "restriction", "uniform_matroid",
]
