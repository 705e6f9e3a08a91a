"""
Finite simplicial sets: representation, standard objects, maps and colimits.
"""

from .cells import Attachment, Replay, cell_presentation, is_isomorphism, replay_cells
from .colimits import (coproduct, cylinder_quotient, glue, product, product_ref, projections,
                       pushout, quotient, quotient_map)
from .maps import MapSearch, enumerate_maps, extensions, first_map
from .sset import SimplexRef, SimplicialMap, SimplicialSet
from .standard import (boundary, boundary_inclusion, characteristic_map, empty, horn,
                       horn_inclusion, nerve, point, standard_simplex, standard_sphere)

__all__ = [
    "Attachment", "Replay", "cell_presentation", "is_isomorphism", "replay_cells",
    "coproduct", "cylinder_quotient", "glue", "product", "product_ref", "projections",
    "pushout", "quotient", "quotient_map",
    "MapSearch", "enumerate_maps", "extensions", "first_map",
    "SimplexRef", "SimplicialMap", "SimplicialSet",
    "boundary", "boundary_inclusion", "characteristic_map", "empty", "horn",
    "horn_inclusion", "nerve", "point", "standard_simplex", "standard_sphere",
]
