"""Exact construction and classification of polycyclic codes over chain rings."""

from .algebra import (
    Factorization,
    FieldCtx,
    FieldElement,
    FieldPoly,
    RtElement,
    RtPoly,
    factor,
    is_irreducible,
)
from .code import Code
from .linalg import BACKEND
from .quotient import FBasisCoords, QuotElem, RingCtx

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Code",
    "Factorization",
    "FBasisCoords",
    "FieldCtx",
    "FieldElement",
    "FieldPoly",
    "QuotElem",
    "RingCtx",
    "RtElement",
    "RtPoly",
    "factor",
    "is_irreducible",
    "__version__",
]
