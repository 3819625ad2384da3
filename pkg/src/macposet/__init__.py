"""Cohomology of moment-angle complexes of simplicial posets, in exact integer arithmetic."""

__version__ = "0.1.0"

from .face_ring import ChainElement, FaceRing, hilbert_function, limit_check, restriction
from .hochster import algebraic_betti, hochster_check, reduced_cohomology
from .intalg import AbelianGroup, IntMatrix, cohomology_at, smith_normal_form
from .io import parse_poset, read_poset, serialize
from .koszul import KoszulMonomial, MomentAngleCohomology, betti, cohomology_all, km
from .poset import (PosetMap, SimplicialPoset, full_subposet, join_product, underlying_complex,
                    validate)
from .torus import find_rational_lsop, is_integral_lsop, is_rational_lsop, trc_audit

__all__ = [
    "AbelianGroup", "ChainElement", "FaceRing", "IntMatrix", "KoszulMonomial",
    "MomentAngleCohomology", "PosetMap", "SimplicialPoset", "algebraic_betti", "betti",
    "cohomology_all", "cohomology_at", "find_rational_lsop", "full_subposet", "hilbert_function",
    "hochster_check", "is_integral_lsop", "is_rational_lsop", "join_product", "km", "limit_check",
    "parse_poset", "read_poset", "reduced_cohomology", "restriction", "serialize",
    "smith_normal_form", "trc_audit", "underlying_complex", "validate",
]
