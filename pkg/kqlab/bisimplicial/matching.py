"""
Strict matching objects, levelwise π_0 and the π_0 fibration probe.

Match_K(Y) is the simplicial set whose k-simplices are the maps
K → Y_{•,k}; it is computed as a strict limit, which is only homotopically
meaningful for the level-discrete or constant inputs the harness feeds it.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

import networkx as nx

from ..core.cells import is_isomorphism
from ..core.deltas import identity
from ..core.maps import enumerate_maps
from ..core.sset import DEFAULT_TOP_DIM_CAP, SimplicialMap, SimplicialSet
from ..core.standard import horn, standard_simplex
from ..ex import TruncatedSSet
from ..oracles.connectivity import pi0
from .bisset import (BiSimplexRef, BiSimplicialMap, BiSimplicialSet, as_bisimplex_v,
                     horizontal_level, in_horizontal_level, vertical_level)

logger = logging.getLogger("kqlab")

Family = Tuple[BiSimplexRef, ...]


class MatchObject(TruncatedSSet):
    """Match_K(Y) through vertical degree `trunc_dim`; `exact` when nothing was cut off."""

    def __init__(self, family: SimplicialSet, bisimplicial: BiSimplicialSet,
                 underlying: SimplicialSet, trunc_dim: int, exact: bool):
        super().__init__(underlying, trunc_dim)
        self.family = family
        self.bisimplicial = bisimplicial
        self.exact = exact


def _families(family: SimplicialSet, complex_: BiSimplicialSet, k: int,
              limit: Optional[int] = None) -> List[Family]:
    """All maps K → Y_{•,k}, each as its tuple of values in bisimplex form."""
    maps = enumerate_maps(family, vertical_level(complex_, k), limit=limit)
    return [tuple(as_bisimplex_v(v, k) for v in m.key()) for m in maps]


def match_object(family: SimplicialSet, complex_: BiSimplicialSet, cap: int = 4,
                 max_maps: Optional[int] = None) -> MatchObject:
    """The strict matching object Match_K(Y), with vertical operators acting elementwise."""
    bound = max(complex_.max_bidegree[1], 0) * family.size()
    top = min(bound, cap)
    levels = [_families(family, complex_, k, max_maps) for k in range(top + 1)]

    def face(element: Family, d: int, i: int) -> Family:
        return tuple(complex_.vface(b, i) for b in element)

    def degeneracy(element: Family, d: int, j: int) -> Family:
        return tuple(complex_.vdegeneracy(b, j) for b in element)

    underlying, _ = SimplicialSet.from_levels(levels, face, degeneracy,
                                              name=f"Match_{family.name}({complex_.name})",
                                              top_dim_cap=max(DEFAULT_TOP_DIM_CAP, top))
    if bound > cap:
        logger.warning(f"{underlying.name} truncated at vertical degree {cap} (bound {bound})")
    logger.debug(f"{underlying.name}: {list(underlying.counts())}")
    return MatchObject(family, complex_, underlying, top, exact=bound <= cap)


def match_restriction(complex_: BiSimplicialSet, n: int, cap: int = 4,
                      match: Optional[MatchObject] = None) -> SimplicialMap:
    """Match_{Δ^n}(Y) → Y_{n,•}, evaluation at the top simplex of Δ^n."""
    match = match or match_object(standard_simplex(n), complex_, cap)
    target = horizontal_level(complex_, n)
    top = list(match.family.all_cells()).index(tuple(range(n + 1)))
    source = match.underlying
    assignment = {element: in_horizontal_level(element[top]) for element in source.all_cells()}
    return SimplicialMap(source, target, assignment, check=False)


def restriction_is_isomorphism(complex_: BiSimplicialSet, n: int, cap: int = 4) -> bool:
    return is_isomorphism(match_restriction(complex_, n, cap))


# ==================== π_0 ====================

def levelwise_pi0(complex_: BiSimplicialSet) -> SimplicialSet:
    """π_0 of every horizontal level, assembled into a simplicial set by the horizontal operators."""
    top = complex_.max_bidegree[0]
    components = [pi0(horizontal_level(complex_, j)) for j in range(top + 1)]
    levels = [[(j, members[0]) for members in components[j].classes] for j in range(top + 1)]

    def vertex(ref: BiSimplexRef) -> Tuple[int, Hashable]:
        j = ref.hdim
        return (j, components[j].of(in_horizontal_level(ref).nondeg_id))

    def face(element: Tuple[int, Hashable], d: int, i: int) -> Tuple[int, Hashable]:
        j, (bid, eh) = element
        return vertex(complex_.hface(BiSimplexRef(j, 0, bid, eh, ()), i))

    def degeneracy(element: Tuple[int, Hashable], d: int, t: int) -> Tuple[int, Hashable]:
        j, (bid, eh) = element
        return vertex(complex_.hdegeneracy(BiSimplexRef(j, 0, bid, eh, ()), t))

    result, _ = SimplicialSet.from_levels(levels, face, degeneracy, name=f"π0 {complex_.name}")
    return result


@dataclass
class HornProbe:
    n: int
    i: int
    components: int
    hit: int
    missing_image: int = 0

    @property
    def surjective(self) -> bool:
        return self.hit == self.components and not self.missing_image

    def summary(self) -> Dict[str, Any]:
        return {"horn": f"Λ^{self.n}_{self.i}", "components": self.components, "hit": self.hit,
                "pi0_surjective": self.surjective}


@dataclass
class ProbeReport:
    """Per-horn π_0-surjectivity of Y_n → Match_Λ(Y) ×_{Match_Λ(Z)} Z_n."""

    source: str
    target: str
    horns: List[HornProbe] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(h.surjective for h in self.horns)

    def summary(self) -> Dict[str, Any]:
        return {"source": self.source, "target": self.target, "passed": self.passed,
                "horns": [h.summary() for h in self.horns], "limits": "strict"}


def _pullback_level(f: BiSimplicialMap, family: SimplicialSet, n: int, k: int,
                    limit: Optional[int]) -> List[Tuple[Family, BiSimplexRef]]:
    """Pairs (m, z) with m: Λ → Y_{•,k}, z ∈ Z_{n,k} and f ∘ m = z restricted to Λ."""
    by_image: Dict[Family, List[Family]] = {}
    for m in _families(family, f.source, k, limit):
        by_image.setdefault(tuple(f.evaluate(b) for b in m), []).append(m)
    cells = list(family.all_cells())
    pairs = []
    for z in f.target.simplices(n, k):
        restriction = tuple(f.target.apply(z, sigma, identity(k)) for sigma in cells)
        pairs.extend((m, z) for m in by_image.get(restriction, []))
    return pairs


def pi0_fibration_probe(f: BiSimplicialMap, dim_cap: int,
                        limit: Optional[int] = None) -> ProbeReport:
    """For every horn Λ^n_i with n ≤ dim_cap, check that Y_n hits every component of the pullback."""
    source, target = f.source, f.target
    report = ProbeReport(source.name, target.name)
    for n in range(1, dim_cap + 1):
        for i in range(n + 1):
            family = horn(n, i)
            cells = list(family.all_cells())
            graph = nx.Graph()
            graph.add_nodes_from(_pullback_level(f, family, n, 0, limit))
            for m, z in _pullback_level(f, family, n, 1, limit):
                ends = [(tuple(source.vface(b, t) for b in m), target.vface(z, t)) for t in (0, 1)]
                graph.add_edge(*ends)
            label = {}
            for index, members in enumerate(nx.connected_components(graph)):
                for node in members:
                    label[node] = index
            hit, missing = set(), 0
            for y in source.simplices(n, 0):
                node = (tuple(source.apply(y, sigma, (0,)) for sigma in cells), f.evaluate(y))
                if node in label:
                    hit.add(label[node])
                else:
                    missing += 1
            probe = HornProbe(n, i, len(set(label.values())), len(hit), missing)
            if not probe.surjective:
                logger.info(f"π0 probe {source.name} → {target.name}: Λ^{n}_{i} not surjective")
            report.horns.append(probe)
    return report
