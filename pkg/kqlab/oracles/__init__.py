"""
Independent homotopy oracles: π_0, integral homology, mapping-cone
equivalence tests, collapse certificates and edge-path presentations.
"""

from .collapse import CollapseCertificate, CollapseOutcome, collapse_search, free_pairs
from .connectivity import (Components, Presentation, edge_path_presentation, is_pi0_bijection,
                           pi0, pi0_map)
from .homology import (ChainComplex, EquivalenceVerdict, HomologyResult, euler_agrees,
                       homology, homology_groups, is_homology_equivalence, mapping_cone,
                       smith_invariants)

__all__ = [
    "CollapseCertificate", "CollapseOutcome", "collapse_search", "free_pairs",
    "Components", "Presentation", "edge_path_presentation", "is_pi0_bijection", "pi0", "pi0_map",
    "ChainComplex", "EquivalenceVerdict", "HomologyResult", "euler_agrees",
    "homology", "homology_groups", "is_homology_equivalence", "mapping_cone", "smith_invariants",
]
