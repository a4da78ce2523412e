"""Matroids over pastures: Grassmann-Pluecker functions, foundations and moduli points."""

from .errors import ResourceLimitError, UndecidedAtBound, ValidationError
from .matroid import GPFunction, Matroid, uniform
from .pasture import FormalSum, PresentedPasture, mk_builtin

__all__ = [
    "FormalSum",
    "GPFunction",
    "Matroid",
    "PresentedPasture",
    "ResourceLimitError",
    "UndecidedAtBound",
    "ValidationError",
    "mk_builtin",
    "uniform",
]
__version__ = "0.1.0"
