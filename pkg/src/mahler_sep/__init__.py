"""Root separation, Mahler measure and discriminant bounds for polynomials."""

from .bounds import BoundReport, NotSeparableError, check_all, lehmer_window
from .families import FamilyKind, FamilySpec, build, sharpness_ratio
from .measures import (
    discriminant_exact,
    discriminant_from_roots,
    mahler_cross_check,
    mahler_measure,
    measure,
    separation,
)
from .poly import Polynomial, RootSet, from_coefficients, from_roots
from .rootfind import RootFindingError, SolverConfig, find_roots

__all__ = [
    "BoundReport", "NotSeparableError", "check_all", "lehmer_window",
    "FamilyKind", "FamilySpec", "build", "sharpness_ratio",
    "discriminant_exact", "discriminant_from_roots", "mahler_cross_check",
    "mahler_measure", "measure", "separation",
    "Polynomial", "RootSet", "from_coefficients", "from_roots",
    "RootFindingError", "SolverConfig", "find_roots",
]
