"""
Finite bisimplicial sets, the diagonal adjunction, the counit to constant
objects and strict matching objects.
"""

from .bisset import (BiMapSearch, BiSimplexRef, BiSimplicialMap, BiSimplicialSet,
                     as_bisimplex_h, as_bisimplex_v, horizontal_level, in_horizontal_level,
                     in_vertical_level, level_map, transpose, vertical_level)
from .diagonal import (CounitFiber, DiagonalAdjunction, HornComparison, adjunction_bijection,
                       closed_form_count, const_geo, counit_fibers, counit_level, counit_map,
                       diag_bisimplex, diag_extend, diag_extend_map, diag_ref, diag_restrict,
                       extension_ref, external_product, fiber_subcomplex, horn_closed_form,
                       horn_isomorphism, representable_comparison, restricted_product_comparison)
from .matching import (MatchObject, ProbeReport, levelwise_pi0, match_object, match_restriction,
                       pi0_fibration_probe, restriction_is_isomorphism)

__all__ = [
    "BiMapSearch", "BiSimplexRef", "BiSimplicialMap", "BiSimplicialSet", "as_bisimplex_h",
    "as_bisimplex_v", "horizontal_level", "in_horizontal_level", "in_vertical_level",
    "level_map", "transpose", "vertical_level",
    "CounitFiber", "DiagonalAdjunction", "HornComparison", "adjunction_bijection",
    "closed_form_count", "const_geo", "counit_fibers", "counit_level", "counit_map",
    "diag_bisimplex", "diag_extend", "diag_extend_map", "diag_ref", "diag_restrict",
    "extension_ref", "external_product", "fiber_subcomplex", "horn_closed_form",
    "horn_isomorphism", "representable_comparison", "restricted_product_comparison",
    "MatchObject", "ProbeReport", "levelwise_pi0", "match_object", "match_restriction",
    "pi0_fibration_probe", "restriction_is_isomorphism",
]
