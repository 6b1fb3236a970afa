"""Exact computations around the Kuga-Satake construction.

Submodules: ``quadspace`` (quadratic form invariants), ``clifford`` (even
Clifford algebra and its center), ``hodgetype`` (Hodge type calculus),
``rootspin`` (B/D root data and spin weights), ``lifting`` (fractional lifts
through toral isogenies), ``ksclassify`` (simple factors and torus bounds).
"""
from .errors import (
    DegenerateFormError,
    DomainError,
    FactorizationLimitError,
    KSError,
    OracleMismatchError,
    ParseError,
    ShapeError,
)
from .ksclassify import KSCase, KSReport, classify, classify_from_gram, hyperkahler_presets, torus_bound
from .quadspace import QuadraticSpace, SquareClass, diagonalize, discriminant, signature, square_class

__version__ = "0.1.0"

__all__ = [
    "DegenerateFormError",
    "DomainError",
    "FactorizationLimitError",
    "KSCase",
    "KSError",
    "KSReport",
    "OracleMismatchError",
    "ParseError",
    "QuadraticSpace",
    "ShapeError",
    "SquareClass",
    "classify",
    "classify_from_gram",
    "diagonalize",
    "discriminant",
    "hyperkahler_presets",
    "signature",
    "square_class",
    "torus_bound",
]
