"""
π_0 and edge-path presentations of the fundamental group.

Both work on the 1-skeleton as a networkx multigraph whose edges are the
nondegenerate 1-simplices, keyed by id.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

import networkx as nx

from ..core.sset import SimplicialMap, SimplicialSet
from ..errors import SimplicialError

logger = logging.getLogger("kqlab")

Letter = Tuple[Hashable, int]


def skeleton_graph(complex_: SimplicialSet) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(complex_.nondegenerate(0))
    for position, sid in enumerate(complex_.nondegenerate(1)):
        source, target = complex_.vertices_of(complex_.ref(sid))
        graph.add_edge(source, target, key=sid, weight=position)
    return graph


@dataclass
class Components:
    """A partition of the vertices; each class is named by its least vertex."""

    classes: List[Tuple[Hashable, ...]]
    representative: Dict[Hashable, Hashable]

    @property
    def count(self) -> int:
        return len(self.classes)

    def of(self, vertex: Hashable) -> Hashable:
        return self.representative[vertex]


def pi0(complex_: SimplicialSet) -> Components:
    """Connected components, ordered by their least vertex in canonical order."""
    order = complex_.index_of
    classes = []
    for members in nx.connected_components(skeleton_graph(complex_)):
        classes.append(tuple(sorted(members, key=order.__getitem__)))
    classes.sort(key=lambda c: order[c[0]])
    representative = {v: members[0] for members in classes for v in members}
    return Components(classes, representative)


def pi0_map(f: SimplicialMap, source: Optional[Components] = None,
            target: Optional[Components] = None) -> Dict[Hashable, Hashable]:
    """π_0(f) on component representatives."""
    source = source or pi0(f.source)
    target = target or pi0(f.target)
    return {members[0]: target.of(f(members[0]).nondeg_id) for members in source.classes}


def is_pi0_bijection(f: SimplicialMap) -> bool:
    induced = pi0_map(f)
    return len(set(induced.values())) == len(induced) == pi0(f.target).count


# ==================== Edge-path presentation ====================

@dataclass
class Presentation:
    """
    Generators and relators of the edge-path group at a base vertex.

    The relators are simplified: a generator that some relator reduces to
    alone is dropped from every word, so they are not the raw triangle words.
    `raw_relators` counts the triangles that contributed before that.
    """

    base: Hashable
    generators: List[Hashable]
    relators: List[List[Letter]]
    tree: List[Hashable] = field(default_factory=list)
    restricted: bool = False
    raw_relators: int = 0

    def summary(self) -> Dict[str, Any]:
        def word(letters: List[Letter]) -> str:
            return " ".join(str(g) if e == 1 else f"{g}^-1" for g, e in letters)

        return {"base": str(self.base), "generators": [str(g) for g in self.generators],
                "relators": [word(r) for r in self.relators], "raw_relators": self.raw_relators,
                "restricted_to_component": self.restricted}


def free_reduce(letters: List[Letter]) -> List[Letter]:
    reduced: List[Letter] = []
    for g, e in letters:
        if reduced and reduced[-1] == (g, -e):
            reduced.pop()
        else:
            reduced.append((g, e))
    return reduced


def edge_path_presentation(complex_: SimplicialSet, base: Optional[Hashable] = None) -> Presentation:
    """
    Generators are the nondegenerate edges off a spanning tree; every
    nondegenerate triangle contributes d2 · d0 · d1^-1. Words are freely
    reduced and a generator equal to a one-letter relator is substituted away.
    """
    if complex_.is_empty():
        raise SimplicialError("the empty complex has no base vertex")
    base = complex_.nondegenerate(0)[0] if base is None else base
    if complex_.dim_of.get(base) != 0:
        raise SimplicialError(f"{base!r} is not a vertex")
    graph = skeleton_graph(complex_)
    component = nx.node_connected_component(graph, base)
    restricted = len(component) < graph.number_of_nodes()
    if restricted:
        logger.warning(f"{complex_.name} is disconnected; presenting the component of {base!r}")
    graph = graph.subgraph(component)
    tree = {key for _, _, key in nx.minimum_spanning_edges(graph, algorithm="kruskal",
                                                            keys=True, data=False)}
    generators = [sid for sid in complex_.nondegenerate(1)
                  if sid not in tree and complex_.faces[sid][0].nondeg_id in component]
    live = set(generators)

    def letter(ref) -> List[Letter]:
        if ref.epi or ref.nondeg_id not in live:
            return []
        return [(ref.nondeg_id, 1)]

    relators = []
    for sid in complex_.nondegenerate(2):
        if complex_.vertices_of(complex_.ref(sid))[0] not in component:
            continue
        d0, d1, d2 = complex_.faces[sid]
        word = letter(d2) + letter(d0) + [(g, -e) for g, e in reversed(letter(d1))]
        relators.append(free_reduce(word))
    raw = len(relators)
    generators, relators = _substitute_trivial(generators, relators)
    return Presentation(base, generators, relators,
                        tree=sorted(tree, key=complex_.index_of.__getitem__),
                        restricted=restricted, raw_relators=raw)


def _substitute_trivial(generators: List[Hashable],
                        relators: List[List[Letter]]) -> Tuple[List[Hashable], List[List[Letter]]]:
    killed = set()
    while True:
        relators = [r for r in relators if r]
        single = next((r[0][0] for r in relators if len(r) == 1), None)
        if single is None:
            break
        killed.add(single)
        relators = [free_reduce([(g, e) for g, e in r if g != single]) for r in relators]
    return [g for g in generators if g not in killed], relators
