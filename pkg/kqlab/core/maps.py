"""
Exhaustive search for simplicial maps between finite simplicial sets.

Maps are built cell by cell in closure order: every nondegenerate simplex of
the source is placed right after its faces, so the candidates for a simplex
are exactly the target simplices with the already-chosen boundary. The
search is an iterative depth-first walk; the first map found is the least
one in the canonical order of candidates.
"""

import logging
from collections import deque
from typing import AbstractSet, Dict, Hashable, Iterator, List, Mapping, Optional, Tuple, Union

from ..errors import ResourceCapExceeded, SimplicialError
from .deltas import merge_epis
from .sset import SimplexRef, SimplicialMap, SimplicialSet

logger = logging.getLogger("kqlab")


def closure_order(complex_: SimplicialSet) -> List[Hashable]:
    """Vertices in breadth-first order, each simplex right after its last face."""
    vertices = list(complex_.nondegenerate(0))
    neighbours: Dict[Hashable, List[Hashable]] = {v: [] for v in vertices}
    cofaces: Dict[Hashable, List[Hashable]] = {}
    missing: Dict[Hashable, int] = {}
    for sid in complex_.all_cells():
        face_ids = {ref.nondeg_id for ref in complex_.faces[sid]}
        missing[sid] = len(face_ids)
        for fid in face_ids:
            cofaces.setdefault(fid, []).append(sid)
        if complex_.dim_of[sid] == 1:
            ends = [ref.nondeg_id for ref in complex_.faces[sid]]
            neighbours[ends[0]].append(ends[1])
            neighbours[ends[1]].append(ends[0])

    order: List[Hashable] = []
    placed = set()

    def place(sid: Hashable) -> None:
        ready = deque([sid])
        while ready:
            current = ready.popleft()
            order.append(current)
            placed.add(current)
            for coface in sorted(cofaces.get(current, ()),
                                 key=lambda c: (complex_.dim_of[c], complex_.index_of[c])):
                missing[coface] -= 1
                if missing[coface] == 0:
                    ready.append(coface)

    for root in vertices:
        if root in placed:
            continue
        queue = deque([root])
        seen = {root}
        while queue:
            v = queue.popleft()
            place(v)
            for w in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


class MapSearch:
    """
    Backtracking enumeration of simplicial maps source → target.

    `fixed` pins the values of some source simplices. `over` is a pair
    (q, v) of maps target → M and source → M; only maps h with q ∘ h = v
    are produced. `touching` keeps only maps whose image meets the given
    nondegenerate target simplices.
    """

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 fixed: Optional[Mapping[Hashable, SimplexRef]] = None,
                 over: Optional[Tuple[SimplicialMap, SimplicialMap]] = None,
                 touching: Optional[AbstractSet[Hashable]] = None):
        self.source = source
        self.target = target
        self.fixed = dict(fixed or {})
        self.over = over
        self.touching = touching
        self.order = closure_order(source)
        if over is not None:
            q, v = over
            if not q.source.same_as(target) or not v.source.same_as(source):
                raise SimplicialError("over-constraint maps do not match the search")

    def _value(self, assignment: Dict[Hashable, SimplexRef], ref: SimplexRef) -> SimplexRef:
        value = assignment[ref.nondeg_id]
        if not ref.epi:
            return value
        return SimplexRef(ref.dim, value.nondeg_id, merge_epis(ref.dim, value.epi, ref.epi))

    def _candidates(self, sid: Hashable, assignment: Dict[Hashable, SimplexRef]) -> List[SimplexRef]:
        d = self.source.dim_of[sid]
        if d == 0:
            pool = [self.target.ref(v) for v in self.target.nondegenerate(0)]
        else:
            boundary = tuple(self._value(assignment, f) for f in self.source.faces[sid])
            pool = self.target.simplices_by_boundary(d).get(boundary, [])
        if sid in self.fixed:
            wanted = self.fixed[sid]
            pool = [c for c in pool if c == wanted]
        if self.over is not None:
            q, v = self.over
            goal = v(sid)
            pool = [c for c in pool if q.evaluate(c) == goal]
        if self.touching is not None and sid == self.order[-1]:
            if not any(v.nondeg_id in self.touching for v in assignment.values()):
                pool = [c for c in pool if c.nondeg_id in self.touching]
        return pool

    def assignments(self) -> Iterator[Dict[Hashable, SimplexRef]]:
        """Yield every map as a fresh assignment dict, in canonical order."""
        order = self.order
        if not order:
            yield {}
            return
        assignment: Dict[Hashable, SimplexRef] = {}
        stack: List[Tuple[List[SimplexRef], int]] = [(self._candidates(order[0], assignment), 0)]
        while stack:
            depth = len(stack) - 1
            pool, index = stack[depth]
            if index >= len(pool):
                stack.pop()
                assignment.pop(order[depth], None)
                continue
            stack[depth] = (pool, index + 1)
            assignment[order[depth]] = pool[index]
            if depth + 1 == len(order):
                yield dict(assignment)
                continue
            stack.append((self._candidates(order[depth + 1], assignment), 0))

    def count(self, limit: Optional[int] = None) -> int:
        total = 0
        for _ in self.assignments():
            total += 1
            if limit is not None and total > limit:
                raise ResourceCapExceeded("map enumeration", limit,
                                          {"source": self.source.name, "target": self.target.name})
        return total

    def iter_maps(self, limit: Optional[int] = None) -> Iterator[SimplicialMap]:
        """Lazy `maps`; the cap is checked as maps are produced."""
        for found, assignment in enumerate(self.assignments()):
            if limit is not None and found >= limit:
                raise ResourceCapExceeded("map enumeration", limit,
                                          {"source": self.source.name, "target": self.target.name})
            yield SimplicialMap(self.source, self.target, assignment, check=False)

    def maps(self, limit: Optional[int] = None) -> List[SimplicialMap]:
        found = list(self.iter_maps(limit))
        logger.debug(f"{len(found)} maps {self.source.name or '?'} → {self.target.name or '?'}")
        return found

    def first(self) -> Optional[SimplicialMap]:
        for assignment in self.assignments():
            return SimplicialMap(self.source, self.target, assignment, check=False)
        return None


def enumerate_maps(source: SimplicialSet, target: SimplicialSet, count_only: bool = False,
                   limit: Optional[int] = None, fixed: Optional[Mapping[Hashable, SimplexRef]] = None,
                   over: Optional[Tuple[SimplicialMap, SimplicialMap]] = None
                   ) -> Union[List[SimplicialMap], int]:
    """All simplicial maps source → target, or their number when count_only is set."""
    search = MapSearch(source, target, fixed=fixed, over=over)
    if count_only:
        return search.count(limit)
    return search.maps(limit)


def first_map(source: SimplicialSet, target: SimplicialSet,
              fixed: Optional[Mapping[Hashable, SimplexRef]] = None,
              over: Optional[Tuple[SimplicialMap, SimplicialMap]] = None) -> Optional[SimplicialMap]:
    return MapSearch(source, target, fixed=fixed, over=over).first()


def pinned_values(inclusion: SimplicialMap, partial: SimplicialMap) -> Optional[Dict[Hashable, SimplexRef]]:
    """
    Translate a map A → Y into fixed values on B along a monomorphism A → B.

    Returns None when two simplices of A with the same image disagree.
    """
    if not inclusion.source.same_as(partial.source):
        raise SimplicialError("partial map and inclusion have different sources")
    fixed: Dict[Hashable, SimplexRef] = {}
    for sid, image in inclusion.assignment.items():
        if image.epi:
            raise SimplicialError(f"inclusion sends {sid!r} to a degenerate simplex")
        value = partial(sid)
        if fixed.setdefault(image.nondeg_id, value) != value:
            return None
    return fixed


def extensions(inclusion: SimplicialMap, partial: SimplicialMap, target: Optional[SimplicialSet] = None,
               over: Optional[Tuple[SimplicialMap, SimplicialMap]] = None) -> MapSearch:
    """The search for maps B → Y restricting to `partial` along A ↪ B."""
    fixed = pinned_values(inclusion, partial)
    target = target if target is not None else partial.target
    if fixed is None:
        # inconsistent pins: a search that finds nothing
        return MapSearch(inclusion.target, target, fixed={sid: None for sid in inclusion.image_ids()},
                         over=over)
    return MapSearch(inclusion.target, target, fixed=fixed, over=over)
