"""
Finite bisimplicial sets in bidirectional Eilenberg–Zilber normal form.

A bisimplex of bidegree (j, k) is a nondegenerate bisimplex of bidegree
(p, q) with a horizontal degeneracy word [j] ↠ [p] and a vertical one
[k] ↠ [q]. Horizontal operators act on the first index, vertical ones on the
second, and the two families commute.
"""

import logging
from typing import (Dict, Hashable, Iterable, Iterator, List, Mapping, NamedTuple, Optional,
                    Sequence, Tuple)

from ..core.deltas import (Epi, Monotone, codegeneracy, coface, compose, epi_mono, identity,
                           merge_epis, surjection, surjection_epis, validate_epi)
from ..core.sset import SimplexRef, SimplicialMap, SimplicialSet
from ..errors import ResourceCapExceeded, SimplicialError

logger = logging.getLogger("kqlab")

Bidegree = Tuple[int, int]


class BiSimplexRef(NamedTuple):
    hdim: int
    vdim: int
    nondeg_id: Hashable
    epi_h: Epi = ()
    epi_v: Epi = ()

    @property
    def bidegree(self) -> Bidegree:
        return (self.hdim, self.vdim)

    @property
    def base_bidegree(self) -> Bidegree:
        return (self.hdim - len(self.epi_h), self.vdim - len(self.epi_v))


class BiSimplicialSet:
    """
    Immutable finite bisimplicial set.

    `cells[(p, q)]` lists the nondegenerate bisimplices of bidegree (p, q).
    `hfaces[id]` has p + 1 entries of bidegree (p - 1, q) and `vfaces[id]`
    has q + 1 entries of bidegree (p, q - 1).
    """

    def __init__(self, cells: Mapping[Bidegree, Iterable[Hashable]],
                 hfaces: Mapping[Hashable, Sequence[BiSimplexRef]],
                 vfaces: Mapping[Hashable, Sequence[BiSimplexRef]], name: str = ""):
        self.cells: Dict[Bidegree, Tuple[Hashable, ...]] = {}
        for bidegree in sorted(cells):
            level = tuple(cells[bidegree])
            if level:
                self.cells[bidegree] = level
        self.name = name
        self.bidegree_of: Dict[Hashable, Bidegree] = {}
        self.index_of: Dict[Hashable, int] = {}
        for bidegree, level in self.cells.items():
            for index, bid in enumerate(level):
                if bid in self.bidegree_of:
                    raise SimplicialError(f"duplicate bisimplex id {bid!r}")
                self.bidegree_of[bid] = bidegree
                self.index_of[bid] = index
        self.hfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
        self.vfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
        for bid, (p, q) in self.bidegree_of.items():
            self.hfaces[bid] = self._checked(bid, hfaces.get(bid, ()), p, (p - 1, q), horizontal=True)
            self.vfaces[bid] = self._checked(bid, vfaces.get(bid, ()), q, (p, q - 1), horizontal=False)
        self._apply_cache: Dict[Tuple[Hashable, Monotone, Monotone], BiSimplexRef] = {}
        self._boundary_index: Dict[Bidegree, Dict[Tuple, List[BiSimplexRef]]] = {}

    def _checked(self, bid: Hashable, given: Sequence[BiSimplexRef], d: int,
                 expected: Bidegree, horizontal: bool) -> Tuple[BiSimplexRef, ...]:
        given = tuple(BiSimplexRef(*ref) for ref in given)
        if d == 0:
            if given:
                raise SimplicialError(f"bisimplex {bid!r} has faces in a degree-0 direction")
            return ()
        if len(given) != d + 1:
            raise SimplicialError(f"bisimplex {bid!r} needs {d + 1} "
                                  f"{'horizontal' if horizontal else 'vertical'} faces")
        for ref in given:
            if ref.bidegree != expected:
                raise SimplicialError(f"face {ref} of {bid!r} has the wrong bidegree")
            validate_epi(ref.hdim, ref.epi_h)
            validate_epi(ref.vdim, ref.epi_v)
            if self.bidegree_of.get(ref.nondeg_id) != ref.base_bidegree:
                raise SimplicialError(f"face {ref} of {bid!r} does not resolve")
        return given

    # ==================== Shape ====================

    def counts(self) -> Dict[Bidegree, int]:
        return {bidegree: len(level) for bidegree, level in self.cells.items()}

    def nondegenerate(self, p: int, q: int) -> Tuple[Hashable, ...]:
        return self.cells.get((p, q), ())

    def all_cells(self) -> Iterator[Hashable]:
        for level in self.cells.values():
            yield from level

    def size(self) -> int:
        return len(self.bidegree_of)

    def ref(self, bid: Hashable) -> BiSimplexRef:
        p, q = self.bidegree_of[bid]
        return BiSimplexRef(p, q, bid)

    @property
    def max_bidegree(self) -> Bidegree:
        """Largest horizontal and vertical degree of a nondegenerate bisimplex."""
        if not self.cells:
            return (-1, -1)
        return (max(p for p, _ in self.cells), max(q for _, q in self.cells))

    def count_simplices(self, j: int, k: int) -> int:
        """|X_{j,k}|, degenerate bisimplices included."""
        from ..core.deltas import binomial_count
        return sum(len(level) * binomial_count(j, p) * binomial_count(k, q)
                   for (p, q), level in self.cells.items())

    # ==================== Operators ====================

    def apply(self, ref: BiSimplexRef, theta_h: Monotone, theta_v: Monotone) -> BiSimplexRef:
        """Evaluate (θ_h, θ_v)* on a bisimplex."""
        if ref.epi_h:
            theta_h = compose(surjection(ref.hdim, ref.epi_h), theta_h)
        if ref.epi_v:
            theta_v = compose(surjection(ref.vdim, ref.epi_v), theta_v)
        return self._apply_nondegenerate(ref.nondeg_id, tuple(theta_h), tuple(theta_v))

    def _apply_nondegenerate(self, bid: Hashable, theta_h: Monotone,
                             theta_v: Monotone) -> BiSimplexRef:
        key = (bid, theta_h, theta_v)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        p, q = self.bidegree_of[bid]
        epi_h, image_h = epi_mono(theta_h)
        epi_v, image_v = epi_mono(theta_v)
        if len(image_h) < p + 1:
            present = set(image_h)
            missing = max(k for k in range(p + 1) if k not in present)
            reduced = tuple(v if v < missing else v - 1 for v in theta_h)
            result = self.apply(self.hfaces[bid][missing], reduced, theta_v)
        elif len(image_v) < q + 1:
            present = set(image_v)
            missing = max(k for k in range(q + 1) if k not in present)
            reduced = tuple(v if v < missing else v - 1 for v in theta_v)
            result = self.apply(self.vfaces[bid][missing], theta_h, reduced)
        else:
            result = BiSimplexRef(len(theta_h) - 1, len(theta_v) - 1, bid, epi_h, epi_v)
        self._apply_cache[key] = result
        return result

    def hface(self, ref: BiSimplexRef, i: int) -> BiSimplexRef:
        if ref.hdim == 0 or not 0 <= i <= ref.hdim:
            raise SimplicialError(f"no horizontal face {i} at bidegree {ref.bidegree}")
        if not ref.epi_h and not ref.epi_v:
            return self.hfaces[ref.nondeg_id][i]
        return self.apply(ref, coface(ref.hdim, i), identity(ref.vdim))

    def vface(self, ref: BiSimplexRef, i: int) -> BiSimplexRef:
        if ref.vdim == 0 or not 0 <= i <= ref.vdim:
            raise SimplicialError(f"no vertical face {i} at bidegree {ref.bidegree}")
        if not ref.epi_h and not ref.epi_v:
            return self.vfaces[ref.nondeg_id][i]
        return self.apply(ref, identity(ref.hdim), coface(ref.vdim, i))

    def hdegeneracy(self, ref: BiSimplexRef, j: int) -> BiSimplexRef:
        return self.apply(ref, codegeneracy(ref.hdim, j), identity(ref.vdim))

    def vdegeneracy(self, ref: BiSimplexRef, j: int) -> BiSimplexRef:
        return self.apply(ref, identity(ref.hdim), codegeneracy(ref.vdim, j))

    def degenerate(self, ref: BiSimplexRef, hdim: int, vdim: int,
                   epi_h: Epi, epi_v: Epi) -> BiSimplexRef:
        """Apply degeneracy words in both directions (pure normal-form arithmetic)."""
        return BiSimplexRef(hdim, vdim, ref.nondeg_id, merge_epis(hdim, ref.epi_h, epi_h),
                            merge_epis(vdim, ref.epi_v, epi_v))

    def simplices(self, j: int, k: int) -> Iterator[BiSimplexRef]:
        """All bisimplices of bidegree (j, k), in canonical order."""
        for (p, q), level in self.cells.items():
            if p > j or q > k:
                continue
            hs = list(surjection_epis(j, p))
            vs = list(surjection_epis(k, q))
            for bid in level:
                for eh in hs:
                    for ev in vs:
                        yield BiSimplexRef(j, k, bid, eh, ev)

    def simplices_by_boundary(self, j: int, k: int) -> Dict[Tuple, List[BiSimplexRef]]:
        index = self._boundary_index.get((j, k))
        if index is None:
            index = {}
            for ref in self.simplices(j, k):
                key = (tuple(self.hface(ref, i) for i in range(j + 1)) if j else (),
                       tuple(self.vface(ref, i) for i in range(k + 1)) if k else ())
                index.setdefault(key, []).append(ref)
            self._boundary_index[(j, k)] = index
        return index

    # ==================== Audit ====================

    def audit(self, cap: Optional[int] = None) -> List[str]:
        """Simplicial identities in each direction and commutation of the two families."""
        problems: List[str] = []
        ph, pv = self.max_bidegree
        limit_h = ph + 1 if cap is None else min(ph + 1, cap)
        limit_v = pv + 1 if cap is None else min(pv + 1, cap)
        for j in range(limit_h + 1):
            for k in range(limit_v + 1):
                for x in self.simplices(j, k):
                    if j >= 2:
                        for b in range(j + 1):
                            for a in range(b):
                                if self.hface(self.hface(x, b), a) != self.hface(self.hface(x, a), b - 1):
                                    problems.append(f"h d{a} d{b} on {x}")
                    if k >= 2:
                        for b in range(k + 1):
                            for a in range(b):
                                if self.vface(self.vface(x, b), a) != self.vface(self.vface(x, a), b - 1):
                                    problems.append(f"v d{a} d{b} on {x}")
                    if j and k:
                        for a in range(j + 1):
                            for b in range(k + 1):
                                if self.vface(self.hface(x, a), b) != self.hface(self.vface(x, b), a):
                                    problems.append(f"h d{a} v d{b} on {x}")
                    for t in range(j + 1):
                        sx = self.hdegeneracy(x, t)
                        if self.hface(sx, t) != x or self.hface(sx, t + 1) != x:
                            problems.append(f"h d s{t} on {x}")
                    for t in range(k + 1):
                        sx = self.vdegeneracy(x, t)
                        if self.vface(sx, t) != x or self.vface(sx, t + 1) != x:
                            problems.append(f"v d s{t} on {x}")
        return problems

    def same_as(self, other: "BiSimplicialSet") -> bool:
        return self is other or (self.cells == other.cells and self.hfaces == other.hfaces
                                 and self.vfaces == other.vfaces)

    def __repr__(self) -> str:
        return f"BiSimplicialSet({self.name or '?'}, counts={self.counts()})"


class BiSimplicialMap:
    """A map of bisimplicial sets, stored on nondegenerate source bisimplices."""

    def __init__(self, source: BiSimplicialSet, target: BiSimplicialSet,
                 assignment: Mapping[Hashable, BiSimplexRef], check: bool = True):
        self.source = source
        self.target = target
        self.assignment: Dict[Hashable, BiSimplexRef] = {}
        for bid in source.all_cells():
            if bid not in assignment:
                raise SimplicialError(f"map leaves bisimplex {bid!r} unassigned")
            value = BiSimplexRef(*assignment[bid])
            if value.bidegree != source.bidegree_of[bid]:
                raise SimplicialError(f"map sends {bid!r} to the wrong bidegree")
            if target.bidegree_of.get(value.nondeg_id) != value.base_bidegree:
                raise SimplicialError(f"map value {value} is not a bisimplex of the target")
            self.assignment[bid] = value
        if check:
            broken = self.violations()
            if broken:
                raise SimplicialError(f"bisimplicial map does not commute with faces at {broken[0]!r}")

    def __call__(self, bid: Hashable) -> BiSimplexRef:
        return self.assignment[bid]

    def evaluate(self, ref: BiSimplexRef) -> BiSimplexRef:
        value = self.assignment[ref.nondeg_id]
        if not ref.epi_h and not ref.epi_v:
            return value
        return self.target.degenerate(value, ref.hdim, ref.vdim, ref.epi_h, ref.epi_v)

    def violations(self) -> List[Hashable]:
        bad = []
        for bid in self.source.all_cells():
            value = self.assignment[bid]
            ok = all(self.evaluate(f) == self.target.hface(value, i)
                     for i, f in enumerate(self.source.hfaces[bid]))
            ok = ok and all(self.evaluate(f) == self.target.vface(value, i)
                            for i, f in enumerate(self.source.vfaces[bid]))
            if not ok:
                bad.append(bid)
        return bad

    def compose(self, inner: "BiSimplicialMap") -> "BiSimplicialMap":
        if not inner.target.same_as(self.source):
            raise SimplicialError("bisimplicial maps are not composable")
        return BiSimplicialMap(inner.source, self.target,
                               {bid: self.evaluate(v) for bid, v in inner.assignment.items()},
                               check=False)

    def key(self) -> Tuple[BiSimplexRef, ...]:
        return tuple(self.assignment[bid] for bid in self.source.all_cells())

    def is_isomorphism(self) -> bool:
        values = list(self.assignment.values())
        if any(v.epi_h or v.epi_v for v in values):
            return False
        return len({v.nondeg_id for v in values}) == len(values) == self.target.size()

    @classmethod
    def identity(cls, complex_: BiSimplicialSet) -> "BiSimplicialMap":
        return cls(complex_, complex_, {bid: complex_.ref(bid) for bid in complex_.all_cells()},
                   check=False)


# ==================== Levels ====================

def horizontal_level(complex_: BiSimplicialSet, j: int) -> SimplicialSet:
    """X_{j,•}: the vertical simplicial set at horizontal degree j."""
    cells: Dict[int, List[Hashable]] = {}
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for (p, q), level in complex_.cells.items():
        if p > j:
            continue
        for eh in surjection_epis(j, p):
            for bid in level:
                sid = (bid, eh)
                cells.setdefault(q, []).append(sid)
                if q > 0:
                    faces[sid] = tuple(
                        in_horizontal_level(complex_.vface(BiSimplexRef(j, q, bid, eh, ()), i))
                        for i in range(q + 1))
    top = max(cells, default=-1)
    return SimplicialSet([cells.get(q, []) for q in range(top + 1)], faces,
                         name=f"{complex_.name}_{{{j},•}}")


def in_horizontal_level(ref: BiSimplexRef) -> SimplexRef:
    """A bisimplex of bidegree (j, k) as a k-simplex of horizontal_level(X, j)."""
    return SimplexRef(ref.vdim, (ref.nondeg_id, ref.epi_h), ref.epi_v)


def in_vertical_level(ref: BiSimplexRef) -> SimplexRef:
    """A bisimplex of bidegree (j, k) as a j-simplex of vertical_level(X, k)."""
    return SimplexRef(ref.hdim, (ref.nondeg_id, ref.epi_v), ref.epi_h)


def vertical_level(complex_: BiSimplicialSet, k: int) -> SimplicialSet:
    """X_{•,k}: the horizontal simplicial set at vertical degree k."""
    cells: Dict[int, List[Hashable]] = {}
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for (p, q), level in complex_.cells.items():
        if q > k:
            continue
        for ev in surjection_epis(k, q):
            for bid in level:
                sid = (bid, ev)
                cells.setdefault(p, []).append(sid)
                if p > 0:
                    faces[sid] = tuple(
                        in_vertical_level(complex_.hface(BiSimplexRef(p, k, bid, (), ev), i))
                        for i in range(p + 1))
    top = max(cells, default=-1)
    return SimplicialSet([cells.get(p, []) for p in range(top + 1)], faces,
                         name=f"{complex_.name}_{{•,{k}}}")


def as_bisimplex_h(ref: SimplexRef, j: int) -> BiSimplexRef:
    """A simplex of horizontal_level(X, j) as a bisimplex of X."""
    bid, eh = ref.nondeg_id
    return BiSimplexRef(j, ref.dim, bid, eh, ref.epi)


def as_bisimplex_v(ref: SimplexRef, k: int) -> BiSimplexRef:
    """A simplex of vertical_level(X, k) as a bisimplex of X."""
    bid, ev = ref.nondeg_id
    return BiSimplexRef(ref.dim, k, bid, ref.epi, ev)


def level_map(f: BiSimplicialMap, degree: int, direction: str = "horizontal",
              source: Optional[SimplicialSet] = None,
              target: Optional[SimplicialSet] = None) -> SimplicialMap:
    """The map induced by f on horizontal (X_{j,•}) or vertical (X_{•,k}) levels."""
    if direction == "horizontal":
        source = source or horizontal_level(f.source, degree)
        target = target or horizontal_level(f.target, degree)
        assignment = {sid: in_horizontal_level(f.evaluate(as_bisimplex_h(source.ref(sid), degree)))
                      for sid in source.all_cells()}
    elif direction == "vertical":
        source = source or vertical_level(f.source, degree)
        target = target or vertical_level(f.target, degree)
        assignment = {sid: in_vertical_level(f.evaluate(as_bisimplex_v(source.ref(sid), degree)))
                      for sid in source.all_cells()}
    else:
        raise SimplicialError(f"unknown direction '{direction}'")
    return SimplicialMap(source, target, assignment, check=False)


def transpose(complex_: BiSimplicialSet) -> BiSimplicialSet:
    """Swap the horizontal and vertical directions."""

    def swap(ref: BiSimplexRef) -> BiSimplexRef:
        return BiSimplexRef(ref.vdim, ref.hdim, ref.nondeg_id, ref.epi_v, ref.epi_h)

    cells = {(q, p): level for (p, q), level in complex_.cells.items()}
    return BiSimplicialSet(cells,
                           {bid: tuple(map(swap, fs)) for bid, fs in complex_.vfaces.items()},
                           {bid: tuple(map(swap, fs)) for bid, fs in complex_.hfaces.items()},
                           name=f"{complex_.name}ᵗ")


# ==================== Map search ====================

class BiMapSearch:
    """Backtracking enumeration of bisimplicial maps, faces before cofaces."""

    def __init__(self, source: BiSimplicialSet, target: BiSimplicialSet):
        self.source = source
        self.target = target
        self.order = sorted(source.all_cells(),
                            key=lambda b: (sum(source.bidegree_of[b]), source.bidegree_of[b],
                                           source.index_of[b]))

    def _candidates(self, bid: Hashable, assignment: Dict[Hashable, BiSimplexRef]) -> List[BiSimplexRef]:
        j, k = self.source.bidegree_of[bid]

        def value(ref: BiSimplexRef) -> BiSimplexRef:
            v = assignment[ref.nondeg_id]
            return self.target.degenerate(v, ref.hdim, ref.vdim, ref.epi_h, ref.epi_v)

        key = (tuple(value(f) for f in self.source.hfaces[bid]),
               tuple(value(f) for f in self.source.vfaces[bid]))
        return self.target.simplices_by_boundary(j, k).get(key, [])

    def assignments(self) -> Iterator[Dict[Hashable, BiSimplexRef]]:
        order = self.order
        if not order:
            yield {}
            return
        assignment: Dict[Hashable, BiSimplexRef] = {}
        stack = [(self._candidates(order[0], assignment), 0)]
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

    def maps(self, limit: Optional[int] = None) -> List[BiSimplicialMap]:
        found = []
        for assignment in self.assignments():
            if limit is not None and len(found) >= limit:
                raise ResourceCapExceeded("bisimplicial map enumeration", limit,
                                          {"source": self.source.name, "target": self.target.name})
            found.append(BiSimplicialMap(self.source, self.target, assignment, check=False))
        return found
