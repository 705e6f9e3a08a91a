"""
Elementary collapses as a contractibility certificate.

A pair (σ, τ) is collapsible when τ is a maximal nondegenerate simplex and σ
occurs exactly once among the faces of all remaining nondegenerate
simplices, as a face of τ. Removing the pair is the inverse of a horn
filling, so a collapse sequence ending at one vertex proves contractibility.
Failure to find one proves nothing.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Optional, Set, Tuple

from ..core.sset import SimplicialSet

logger = logging.getLogger("kqlab")

Pair = Tuple[Hashable, Hashable]


def _face_counts(complex_: SimplicialSet, alive: Iterable[Hashable]) -> Counter:
    counts: Counter = Counter()
    for sid in alive:
        for face in complex_.faces[sid]:
            if not face.epi:
                counts[face.nondeg_id] += 1
    return counts


def free_pairs(complex_: SimplicialSet, alive: Set[Hashable],
               counts: Optional[Counter] = None) -> List[Pair]:
    """Collapsible (free face, coface) pairs among the surviving simplices, in canonical order."""
    counts = counts if counts is not None else _face_counts(complex_, alive)
    pairs = []
    for tau in complex_.all_cells():
        if tau not in alive or counts[tau] or complex_.dim_of[tau] == 0:
            continue
        for face in complex_.faces[tau]:
            if not face.epi and counts[face.nondeg_id] == 1:
                pairs.append((face.nondeg_id, tau))
    pairs.sort(key=lambda p: (-complex_.dim_of[p[1]], complex_.index_of[p[1]],
                              complex_.index_of[p[0]]))
    return pairs


@dataclass
class CollapseCertificate:
    """An ordered list of elementary collapses ending at a single vertex."""

    pairs: List[Pair]
    final_vertex: Hashable

    def replay(self, complex_: SimplicialSet) -> bool:
        """Re-check every step from scratch on the input complex."""
        alive = set(complex_.all_cells())
        for sigma, tau in self.pairs:
            if (sigma, tau) not in free_pairs(complex_, alive):
                return False
            alive -= {sigma, tau}
        return alive == {self.final_vertex}

    def summary(self) -> Dict[str, Any]:
        return {"steps": len(self.pairs), "final_vertex": str(self.final_vertex)}


@dataclass
class CollapseOutcome:
    """Result of a bounded collapse search; no certificate means inconclusive."""

    certificate: Optional[CollapseCertificate]
    explored: int
    budget: int
    reason: str = ""
    stuck_at: List[Hashable] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return self.certificate is not None

    def summary(self) -> Dict[str, Any]:
        return {"collapsed": self.conclusive, "explored": self.explored,
                "budget": self.budget, "reason": self.reason}


def _ordered(complex_: SimplicialSet, ids: Iterable[Hashable]) -> List[Hashable]:
    return sorted(ids, key=lambda s: (complex_.dim_of[s], complex_.index_of[s]))


def collapse_search(complex_: SimplicialSet, budget: int = 2000) -> CollapseOutcome:
    """Greedy free-face collapsing with backtracking, bounded by `budget` explored states."""
    if complex_.is_empty():
        return CollapseOutcome(None, 0, budget, reason="empty complex")
    start = frozenset(complex_.all_cells())
    seen: Set[frozenset] = set()
    stack: List[Tuple[frozenset, List[Pair]]] = [(start, [])]
    explored = 0
    smallest = start
    while stack:
        alive, path = stack.pop()
        if alive in seen:
            continue
        seen.add(alive)
        explored += 1
        if len(alive) == 1:
            (vertex,) = alive
            if complex_.dim_of[vertex] == 0:
                logger.debug(f"{complex_.name} collapses in {len(path)} steps")
                return CollapseOutcome(CollapseCertificate(path, vertex), explored, budget,
                                       reason="collapsed")
        if len(alive) < len(smallest):
            smallest = alive
        if explored >= budget:
            logger.warning(f"collapse search on {complex_.name} ran out of budget {budget}")
            return CollapseOutcome(None, explored, budget, reason="budget exhausted",
                                   stuck_at=_ordered(complex_, smallest))
        pairs = free_pairs(complex_, set(alive))
        # push in reverse so the first pair is tried first
        for sigma, tau in reversed(pairs):
            stack.append((alive - {sigma, tau}, path + [(sigma, tau)]))
    reason = "no free face" if explored == 1 else "search space exhausted"
    return CollapseOutcome(None, explored, budget, reason=reason,
                           stuck_at=_ordered(complex_, smallest))
