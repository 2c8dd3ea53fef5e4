"""Exact line bundle cohomology and Chow ring computations on toric varieties."""

__version__ = "0.1.0"

from .fan import (Fan, build_del_pezzo_fan, build_projective_fan, cones_of_dimension,
                  symmetry_report, validate)
from .cohomology import (DivisorClass, canonical_divisor, cohomology, ext_dimension,
                         picard_presentation, prop43_divisor, search_h1)
from .homology import SignPattern, cycle_criterion, reduced_homology, support_complex

__all__ = [
    "Fan", "build_del_pezzo_fan", "build_projective_fan", "cones_of_dimension",
    "symmetry_report", "validate", "DivisorClass", "canonical_divisor", "cohomology",
    "ext_dimension", "picard_presentation", "prop43_divisor", "search_h1", "SignPattern",
    "cycle_criterion", "reduced_homology", "support_complex",
]
