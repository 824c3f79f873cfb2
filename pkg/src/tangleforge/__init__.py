"""Separation systems, profiles, and canonical distinguishing tree sets."""

from .errors import (AxiomError, ParseError, PreconditionError, SizeCapError,
                     TangleForgeError)
from .graphs import (Graph, GraphSeparation, GraphSystem, all_separations,
                     build_sk, check_structural_submodularity, complete_graph,
                     corner_join, corner_meet, cycle_graph, grid_graph, order,
                     path_graph, star_graph)
from .iso import (SystemIsomorphism, apply_iso, random_relabeling,
                  relabel_system, verify_iso)
from .orientations import (Orientation, OrientationFamily,
                           consistency_violation, enumerate_consistent,
                           enumerate_profiles, is_consistent, is_p_submodular,
                           is_profile, p_join, p_meet, profile_violation)
from .sepsys import (AxiomViolation, SeparationSystem, ValidationReport,
                     validate_relations)
from .tree import (TreeSetResult, canonical_tree_set, compute_mp,
                   exclusivity_counts, infimum_representative, restrict_family,
                   verify_nested_set)

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "AxiomViolation", "Graph", "GraphSeparation", "GraphSystem",
    "Orientation", "OrientationFamily", "ParseError", "PreconditionError",
    "SeparationSystem", "SizeCapError", "SystemIsomorphism", "TangleForgeError",
    "TreeSetResult", "ValidationReport", "all_separations", "apply_iso",
    "build_sk", "canonical_tree_set", "check_structural_submodularity",
    "complete_graph", "compute_mp", "consistency_violation", "corner_join",
    "corner_meet", "cycle_graph", "enumerate_consistent", "enumerate_profiles",
    "exclusivity_counts", "grid_graph", "infimum_representative",
    "is_consistent", "is_p_submodular", "is_profile", "order", "p_join",
    "p_meet", "path_graph", "profile_violation", "random_relabeling",
    "relabel_system", "restrict_family", "star_graph", "validate_relations",
    "verify_iso", "verify_nested_set",
]
