"""Exact computational algebra over prime fields for surfaces in P4.

The package provides a Groebner-basis, free-resolution and sheaf-cohomology
kernel over F_p, plus two construction pipelines for smooth irregular
elliptic surfaces of degree 12 in P4: one through a rank-4 vector bundle,
one through a pair of liaison steps.
"""

from .ring import Poly, PolyRing, PrimeField
from .modules import FreeModule, GradedMatrix, GradedModule
from .idealops import Ideal, intersect, quotient, saturate
from .resolution import BettiTable, Resolution, free_resolution
from .cohomology import CohomologySheet, cohomology_table, hartshorne_rao
from .report import ConstructionReport

__version__ = "0.1.0"

__all__ = [
    "Poly", "PolyRing", "PrimeField",
    "FreeModule", "GradedMatrix", "GradedModule",
    "Ideal", "intersect", "quotient", "saturate",
    "BettiTable", "Resolution", "free_resolution",
    "CohomologySheet", "cohomology_table", "hartshorne_rao",
    "ConstructionReport",
    "__version__",
]
