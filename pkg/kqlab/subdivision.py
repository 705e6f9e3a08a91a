"""
Barycentric subdivision and last-vertex maps.

sd(Δ^n) is the nerve of the poset of faces of Δ^n; its simplices are strict
chains of vertex tuples. A general K is subdivided as the colimit of the
sd(Δ^m) over its nondegenerate simplices, glued along faces. When K is
nonsingular (every nondegenerate simplex embeds) the colimit is the nerve of
K's own face poset and is built directly.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Hashable, List, Optional, Tuple, Union

import networkx as nx

from .core.colimits import glue
from .core.deltas import Monotone, coface, injections, merge_epis, surjection
from .core.sset import SimplexRef, SimplicialMap, SimplicialSet
from .core.standard import characteristic_map, nerve, standard_simplex
from .errors import ResourceCapExceeded, SimplicialError

logger = logging.getLogger("kqlab")

Chain = Tuple[Tuple[int, ...], ...]


def _dedupe(chain: Tuple) -> SimplexRef:
    """Normal form of a weakly increasing chain: repeated entries are collapsed positions."""
    epi = tuple(t for t in range(len(chain) - 1) if chain[t] == chain[t + 1])
    base = tuple(chain[t] for t in range(len(chain)) if t == 0 or chain[t] != chain[t - 1])
    return SimplexRef(len(chain) - 1, base, epi)


def sd_operator(theta: Monotone) -> Callable[[Chain], SimplexRef]:
    """sd(θ): sd Δ^m → sd Δ^n on chains, for a monotone θ: [m] → [n]."""

    def act(chain: Chain) -> SimplexRef:
        return _dedupe(tuple(tuple(sorted({theta[v] for v in face})) for face in chain))

    return act


def last_vertex_operator(chain: Chain) -> Monotone:
    """The last-vertex map sd Δ^n → Δ^n as the operator (max S_0, ..., max S_k)."""
    return tuple(face[-1] for face in chain)


def is_nonsingular(complex_: SimplicialSet) -> bool:
    """True when every nondegenerate simplex is embedded by its characteristic map."""
    for d in range(1, complex_.top_dim + 1):
        for sid in complex_.nondegenerate(d):
            if not characteristic_map(complex_, complex_.ref(sid)).is_mono():
                return False
    return True


class Subdivision:
    """
    sd K together with its colimit legs and last-vertex map.

    `leg(x, c)` is the image of the simplex c of sd Δ^m under the leg
    sd Δ^m → sd K of the nondegenerate m-simplex x; `representative(cell)`
    returns some (x, chain) whose leg is the nondegenerate cell.
    """

    def __init__(self, base: SimplicialSet, complex_: SimplicialSet,
                 legs: Callable[[Hashable, Chain], SimplexRef],
                 representatives: Dict[Hashable, Tuple[Hashable, Chain]]):
        self.base = base
        self.complex = complex_
        self._legs = legs
        self._representatives = representatives
        self.last_vertex = SimplicialMap(complex_, base, {
            cell: base.apply(base.ref(x), last_vertex_operator(chain))
            for cell, (x, chain) in representatives.items()}, check=False)

    def leg(self, x: Hashable, simplex: Union[Chain, SimplexRef]) -> SimplexRef:
        if isinstance(simplex, SimplexRef):
            value = self._legs(x, simplex.nondeg_id)
            if not simplex.epi:
                return value
            return SimplexRef(simplex.dim, value.nondeg_id,
                              merge_epis(simplex.dim, value.epi, simplex.epi))
        return self._legs(x, simplex)

    def representative(self, cell: Hashable) -> Tuple[Hashable, Chain]:
        return self._representatives[cell]

    def leg_map(self, x: Hashable) -> SimplicialMap:
        source = sd_simplex(self.base.dim_of[x])
        return SimplicialMap(source, self.complex,
                             {chain: self.leg(x, chain) for chain in source.all_cells()}, check=False)


def _nerve_subdivision(complex_: SimplicialSet) -> Subdivision:
    poset = nx.DiGraph()
    poset.add_nodes_from(complex_.all_cells())
    # faces by vertex tuple, for each nondegenerate simplex
    face_of: Dict[Hashable, Dict[Tuple[int, ...], Hashable]] = {}
    for sid in complex_.all_cells():
        m = complex_.dim_of[sid]
        table = {}
        for k in range(m + 1):
            for theta in injections(k, m):
                table[theta] = complex_.apply(complex_.ref(sid), theta).nondeg_id
        face_of[sid] = table
        for theta, fid in table.items():
            if fid != sid:
                poset.add_edge(fid, sid)
    result = nerve(poset, key=lambda s: (complex_.dim_of[s], complex_.index_of[s]),
                   name=f"sd {complex_.name}")
    position = {sid: {fid: theta for theta, fid in table.items()} for sid, table in face_of.items()}
    representatives = {chain: (chain[-1], tuple(position[chain[-1]][y] for y in chain))
                       for chain in result.all_cells()}

    def legs(x: Hashable, chain: Chain) -> SimplexRef:
        return SimplexRef(len(chain) - 1, tuple(face_of[x][face] for face in chain), ())

    return Subdivision(complex_, result, legs, representatives)


def _colimit_subdivision(complex_: SimplicialSet) -> Subdivision:
    cells: List[List[Hashable]] = []
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    relations = []
    for sid in complex_.all_cells():
        m = complex_.dim_of[sid]
        local = sd_simplex(m)
        for chain in local.all_cells():
            k = local.dim_of[chain]
            while len(cells) <= k:
                cells.append([])
            cells[k].append((sid, chain))
            faces[(sid, chain)] = tuple(SimplexRef(f.dim, (sid, f.nondeg_id), f.epi)
                                        for f in local.faces[chain])
        if m == 0:
            continue
        for i, face in enumerate(complex_.faces[sid]):
            inclusion = sd_operator(coface(m, i))
            squash = sd_operator(surjection(face.dim, face.epi))
            for chain in sd_simplex(m - 1).nondegenerate(m - 1):
                there = inclusion(chain)
                here = squash(chain)
                relations.append((SimplexRef(there.dim, (sid, there.nondeg_id), there.epi),
                                  SimplexRef(here.dim, (face.nondeg_id, here.nondeg_id), here.epi)))
    base = SimplicialSet(cells, faces, name=f"⊔ sd Δ ({complex_.name})",
                         top_dim_cap=complex_.top_dim_cap)
    result, projection = glue(base, relations, name=f"sd {complex_.name}")
    representatives = {cell: cell for cell in result.all_cells()}

    def legs(x: Hashable, chain: Chain) -> SimplexRef:
        return projection.evaluate(base.ref((x, chain)))

    return Subdivision(complex_, result, legs, representatives)


def subdivide(complex_: SimplicialSet, method: str = "auto", max_cells: Optional[int] = None,
              top_dim_cap: Optional[int] = None) -> Subdivision:
    """Subdivide K. `method` is "auto", "nerve" or "colimit"."""
    if top_dim_cap is not None and complex_.top_dim > top_dim_cap:
        raise ResourceCapExceeded("top dimension", top_dim_cap,
                                  {"complex": complex_.name, "dim": complex_.top_dim})
    if method == "auto":
        method = "nerve" if is_nonsingular(complex_) else "colimit"
    if method == "nerve":
        if not is_nonsingular(complex_):
            raise SimplicialError(f"{complex_.name} is singular; its subdivision needs the colimit")
        result = _nerve_subdivision(complex_)
    elif method == "colimit":
        result = _colimit_subdivision(complex_)
    else:
        raise SimplicialError(f"unknown subdivision method '{method}'")
    if max_cells is not None and result.complex.size() > max_cells:
        raise ResourceCapExceeded("subdivision size", max_cells,
                                  {"complex": complex_.name, "cells": result.complex.size()})
    logger.debug(f"sd {complex_.name}: {list(result.complex.counts())} ({method})")
    return result


def sd(complex_: SimplicialSet, method: str = "auto") -> Tuple[SimplicialSet, SimplicialMap]:
    """(sd K, last-vertex map sd K → K)."""
    result = subdivide(complex_, method)
    return result.complex, result.last_vertex


@lru_cache(maxsize=None)
def subdivided_simplex(n: int) -> Subdivision:
    return _nerve_subdivision(standard_simplex(n))


def sd_simplex(n: int) -> SimplicialSet:
    """sd Δ^n, whose simplices are chains of vertex tuples."""
    return subdivided_simplex(n).complex


def sd_map(f: SimplicialMap, source_sd: Optional[Subdivision] = None,
           target_sd: Optional[Subdivision] = None) -> SimplicialMap:
    """sd(f): sd K → sd L."""
    source_sd = source_sd or subdivide(f.source)
    target_sd = target_sd or subdivide(f.target)
    assignment = {}
    for cell in source_sd.complex.all_cells():
        x, chain = source_sd.representative(cell)
        value = f(x)
        image = sd_operator(surjection(value.dim, value.epi))(chain)
        assignment[cell] = target_sd.leg(value.nondeg_id, image)
    return SimplicialMap(source_sd.complex, target_sd.complex, assignment, check=False)


class IteratedSubdivision:
    """sd^i K with every intermediate stage and the composite last-vertex map."""

    def __init__(self, stages: List[Subdivision], base: SimplicialSet):
        self.stages = stages
        self.base = base
        composite = SimplicialMap.identity(base)
        for stage in stages:
            composite = composite.compose(stage.last_vertex)
        self.last_vertex = composite

    @property
    def complex(self) -> SimplicialSet:
        return self.stages[-1].complex if self.stages else self.base


def sd_iterated(complex_: SimplicialSet, times: int, max_cells: Optional[int] = None,
                top_dim_cap: Optional[int] = None) -> IteratedSubdivision:
    stages: List[Subdivision] = []
    current = complex_
    for stage in range(times):
        try:
            step = subdivide(current, max_cells=max_cells, top_dim_cap=top_dim_cap)
        except ResourceCapExceeded as exc:
            raise ResourceCapExceeded(exc.what, exc.cap,
                                      dict(exc.reached, stage=stage + 1,
                                           completed=stage)) from exc
        stages.append(step)
        current = step.complex
    return IteratedSubdivision(stages, complex_)


def sd_iter(complex_: SimplicialSet, times: int, max_cells: Optional[int] = None,
            top_dim_cap: Optional[int] = None) -> Tuple[SimplicialSet, SimplicialMap]:
    """(sd^i K, composite last-vertex map sd^i K → K); i = 0 is the identity."""
    result = sd_iterated(complex_, times, max_cells, top_dim_cap)
    return result.complex, result.last_vertex


def face_poset_chain_count(n: int, k: int) -> int:
    """
    Number of strict chains S_0 ⊊ ... ⊊ S_k of nonempty subsets of [n].

    Counted by dynamic programming over a networkx DAG of all strict
    inclusions, independently of the nerve construction.
    """
    if k < 0:
        return 0
    subsets = [frozenset(c) for size in range(1, n + 2) for c in combinations(range(n + 1), size)]
    poset = nx.DiGraph()
    poset.add_nodes_from(subsets)
    poset.add_edges_from((a, b) for a in subsets for b in subsets if a < b)
    paths = {v: [1] + [0] * k for v in poset}
    for v in nx.topological_sort(poset):
        for w in poset.successors(v):
            for length in range(k):
                paths[w][length + 1] += paths[v][length]
    return sum(counts[k] for counts in paths.values())
