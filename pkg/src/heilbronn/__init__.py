"""Formulations, heuristics and an interval certifier for the Heilbronn triangle problem."""

from .certifier import CertificationResult, RegionBox, brute_force_oracle, certify
from .enhancements import EnhancementSet, StripPartition, strip_capacity, y_bound_table
from .geometry import Configuration, Point, TripleAreas, canonicalize, min_triangle_area, signed_area
from .heuristics import BoundsH, KnownConfiguration, bounds_for, known_configuration, local_refine, sample_lower_bound
from .model import FormulationModel, build_approach1, build_approach2, build_approach3, export

__version__ = "0.1.0"

__all__ = [
    "BoundsH",
    "CertificationResult",
    "Configuration",
    "EnhancementSet",
    "FormulationModel",
    "KnownConfiguration",
    "Point",
    "RegionBox",
    "StripPartition",
    "TripleAreas",
    "bounds_for",
    "brute_force_oracle",
    "build_approach1",
    "build_approach2",
    "build_approach3",
    "canonicalize",
    "certify",
    "export",
    "known_configuration",
    "local_refine",
    "min_triangle_area",
    "sample_lower_bound",
    "signed_area",
    "strip_capacity",
    "y_bound_table",
]
