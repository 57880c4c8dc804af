"""Exact construction and verification of reality-based algebras."""

from .exactreal import ONE, ZERO, RadicalNumber, as_radical, sqrt
from .matrix_model import MatrixBasis, character_data, extract_structure_constants
from .rba_core import (
    DegreeMap,
    InvolutionPerm,
    RbaPresentation,
    StructureTensor,
    VerificationReport,
    circle_product,
    verify_rba,
)

__version__ = "0.1.0"

__all__ = [
    "ONE",
    "ZERO",
    "RadicalNumber",
    "as_radical",
    "sqrt",
    "MatrixBasis",
    "character_data",
    "extract_structure_constants",
    "DegreeMap",
    "InvolutionPerm",
    "RbaPresentation",
    "StructureTensor",
    "VerificationReport",
    "circle_product",
    "verify_rba",
]
