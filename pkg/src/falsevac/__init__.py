"""Numerical toolkit for false-vacuum decay in 1-D scalar field theories."""
from .errors import ConvergenceError, PreconditionError
from .lattice import DeltaPair, FieldConfig, Grid
from .potentials import (DrivenSineGordon, QuarticDoubleWell, TaylorQuartic, VacuumPair,
                         find_minima)

__all__ = [
    "ConvergenceError", "PreconditionError", "DeltaPair", "FieldConfig", "Grid",
    "DrivenSineGordon", "QuarticDoubleWell", "TaylorQuartic", "VacuumPair", "find_minima",
]
__version__ = "0.1.0"
