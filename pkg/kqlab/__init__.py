"""
kqlab - exact computations with finite simplicial and bisimplicial sets.

Subdivision and Ex, lifting problems and the small object argument over the
Kan-Quillen generating sets, the diagonal adjunction of bisimplicial sets,
and independent homotopy oracles, with a scenario harness on top.
"""

__version__ = "1.0.0"

from .config import Config
from .core import SimplexRef, SimplicialMap, SimplicialSet
from .bisimplicial import BiSimplexRef, BiSimplicialMap, BiSimplicialSet
from .errors import KQError

__all__ = ["Config", "SimplexRef", "SimplicialMap", "SimplicialSet", "BiSimplexRef",
           "BiSimplicialMap", "BiSimplicialSet", "KQError", "__version__"]
