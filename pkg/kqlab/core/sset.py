"""
Finite simplicial sets presented by their nondegenerate simplices.

Every simplex is addressed by a SimplexRef in Eilenberg–Zilber normal form:
a nondegenerate simplex together with the collapsed positions of a
degeneracy word. Degenerate simplices are never stored; all simplicial
operators are evaluated by normal-form arithmetic on these references.
"""

import logging
from typing import (Callable, Dict, Hashable, Iterable, Iterator, List, Mapping,
                    NamedTuple, Optional, Sequence, Set, Tuple, TypeVar)

from ..errors import ResourceCapExceeded, SimplicialError
from .deltas import (Epi, Monotone, codegeneracy, coface, compose, epi_mono,
                     surjection, surjection_epis, validate_epi)

logger = logging.getLogger("kqlab")

DEFAULT_TOP_DIM_CAP = 8

E = TypeVar("E")


class SimplexRef(NamedTuple):
    """A simplex as (dimension, nondegenerate simplex, collapsed positions)."""

    dim: int
    nondeg_id: Hashable
    epi: Epi = ()

    @property
    def is_degenerate(self) -> bool:
        return bool(self.epi)

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.epi)


class SimplicialSet:
    """
    Immutable finite simplicial set.

    `cells[d]` lists the nondegenerate d-simplices; `faces[id]` holds the
    d + 1 faces of a nondegenerate d-simplex, each already in normal form.
    Ids are hashable and unique across all dimensions.
    """

    def __init__(self, cells: Sequence[Iterable[Hashable]],
                 faces: Mapping[Hashable, Sequence[SimplexRef]],
                 name: str = "", top_dim_cap: int = DEFAULT_TOP_DIM_CAP):
        levels = [tuple(level) for level in cells]
        while levels and not levels[-1]:
            levels.pop()
        if len(levels) - 1 > top_dim_cap:
            raise ResourceCapExceeded("top dimension", top_dim_cap,
                                      {"complex": name or "complex", "dim": len(levels) - 1})
        self.cells: Tuple[Tuple[Hashable, ...], ...] = tuple(levels)
        self.name = name
        self.top_dim_cap = top_dim_cap
        self.dim_of: Dict[Hashable, int] = {}
        self.index_of: Dict[Hashable, int] = {}
        for d, level in enumerate(self.cells):
            for index, sid in enumerate(level):
                if sid in self.dim_of:
                    raise SimplicialError(f"duplicate simplex id {sid!r}")
                self.dim_of[sid] = d
                self.index_of[sid] = index
        self.faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
        for sid, d in self.dim_of.items():
            self.faces[sid] = self._checked_faces(sid, d, faces.get(sid, ()))
        self._apply_cache: Dict[Tuple[Hashable, Monotone], SimplexRef] = {}
        self._boundary_index: Dict[int, Dict[Tuple[SimplexRef, ...], List[SimplexRef]]] = {}

    def _checked_faces(self, sid: Hashable, d: int,
                       given: Sequence[SimplexRef]) -> Tuple[SimplexRef, ...]:
        given = tuple(SimplexRef(*ref) for ref in given)
        if d == 0:
            if given:
                raise SimplicialError(f"vertex {sid!r} cannot have faces")
            return ()
        if len(given) != d + 1:
            raise SimplicialError(f"simplex {sid!r} of dimension {d} has {len(given)} faces")
        for ref in given:
            if ref.dim != d - 1:
                raise SimplicialError(f"face {ref} of {sid!r} has the wrong dimension")
            validate_epi(ref.dim, ref.epi)
            if self.dim_of.get(ref.nondeg_id) != ref.base_dim:
                raise SimplicialError(f"face {ref} of {sid!r} does not resolve")
        return given

    # ==================== Shape ====================

    @property
    def top_dim(self) -> int:
        """Highest dimension of a nondegenerate simplex; -1 when empty."""
        return len(self.cells) - 1

    def nondegenerate(self, d: int) -> Tuple[Hashable, ...]:
        return self.cells[d] if 0 <= d < len(self.cells) else ()

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.cells)

    def count(self, d: int) -> int:
        return len(self.nondegenerate(d))

    def size(self) -> int:
        return len(self.dim_of)

    def is_empty(self) -> bool:
        return not self.cells

    def all_cells(self) -> Iterator[Hashable]:
        """Nondegenerate simplices in canonical order (dimension, then index)."""
        for level in self.cells:
            yield from level

    def ref(self, sid: Hashable) -> SimplexRef:
        return SimplexRef(self.dim_of[sid], sid, ())

    def sort_key(self, ref: SimplexRef) -> Tuple[int, int, int, Epi]:
        """Canonical order on simplices: dimension, then nondegenerate id, then epi."""
        return (ref.dim, self.dim_of[ref.nondeg_id], self.index_of[ref.nondeg_id], ref.epi)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts()))

    # ==================== Operators ====================

    def apply(self, ref: SimplexRef, theta: Monotone) -> SimplexRef:
        """Evaluate the simplicial operator θ*: X_dim → X_m on a simplex."""
        if ref.epi:
            theta = compose(surjection(ref.dim, ref.epi), theta)
        return self._apply_nondegenerate(ref.nondeg_id, tuple(theta))

    def _apply_nondegenerate(self, sid: Hashable, theta: Monotone) -> SimplexRef:
        key = (sid, theta)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        q = self.dim_of[sid]
        epi, image = epi_mono(theta)
        if len(image) == q + 1:
            result = SimplexRef(len(theta) - 1, sid, epi)
        else:
            present = set(image)
            missing = max(k for k in range(q + 1) if k not in present)
            reduced = tuple(v if v < missing else v - 1 for v in theta)
            result = self.apply(self.faces[sid][missing], reduced)
        self._apply_cache[key] = result
        return result

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        if not 0 <= i <= ref.dim or ref.dim == 0:
            raise SimplicialError(f"no face {i} of a {ref.dim}-simplex")
        if not ref.epi:
            return self.faces[ref.nondeg_id][i]
        return self.apply(ref, coface(ref.dim, i))

    def degeneracy(self, ref: SimplexRef, j: int) -> SimplexRef:
        if not 0 <= j <= ref.dim:
            raise SimplicialError(f"no degeneracy {j} of a {ref.dim}-simplex")
        return self.apply(ref, codegeneracy(ref.dim, j))

    def degenerate(self, ref: SimplexRef, dim: int, epi: Epi) -> SimplexRef:
        """Apply the degeneracy word `epi` (a surjection out of [dim]) to `ref`."""
        if not epi:
            return ref
        return self.apply(ref, surjection(dim, epi))

    def vertices_of(self, ref: SimplexRef) -> Tuple[Hashable, ...]:
        return tuple(self.apply(ref, (t,)).nondeg_id for t in range(ref.dim + 1))

    def simplices(self, d: int) -> Iterator[SimplexRef]:
        """All d-simplices, degenerate ones included, in canonical order."""
        for q in range(min(d, self.top_dim) + 1):
            epis = list(surjection_epis(d, q))
            for sid in self.cells[q]:
                for epi in epis:
                    yield SimplexRef(d, sid, epi)

    def simplices_by_boundary(self, d: int) -> Dict[Tuple[SimplexRef, ...], List[SimplexRef]]:
        """All d-simplices grouped by their tuple of faces (d ≥ 1)."""
        index = self._boundary_index.get(d)
        if index is None:
            index = {}
            for ref in self.simplices(d):
                key = tuple(self.face(ref, i) for i in range(d + 1))
                index.setdefault(key, []).append(ref)
            self._boundary_index[d] = index
        return index

    # ==================== Subcomplexes ====================

    def closure(self, ids: Iterable[Hashable]) -> Set[Hashable]:
        """The smallest face-closed set of nondegenerate simplices containing `ids`."""
        closed: Set[Hashable] = set()
        stack = list(ids)
        while stack:
            sid = stack.pop()
            if sid in closed:
                continue
            if sid not in self.dim_of:
                raise SimplicialError(f"unknown simplex {sid!r}")
            closed.add(sid)
            stack.extend(ref.nondeg_id for ref in self.faces[sid])
        return closed

    def is_closed(self, ids: Iterable[Hashable]) -> bool:
        ids = set(ids)
        return all(ref.nondeg_id in ids for sid in ids for ref in self.faces.get(sid, ()))

    def subcomplex(self, ids: Iterable[Hashable], name: str = "") -> "SimplicialSet":
        """The subcomplex on a face-closed set of nondegenerate simplices."""
        ids = set(ids)
        if not self.is_closed(ids):
            raise SimplicialError("subcomplex ids are not closed under faces")
        cells = [[sid for sid in level if sid in ids] for level in self.cells]
        return SimplicialSet(cells, {sid: self.faces[sid] for sid in ids},
                             name=name, top_dim_cap=self.top_dim_cap)

    # ==================== Audit ====================

    def audit(self, through: Optional[int] = None) -> List[str]:
        """Check the simplicial identities on every simplex up to top_dim + 1."""
        problems: List[str] = []
        limit = self.top_dim + 1 if through is None else through
        for d in range(limit + 1):
            for x in self.simplices(d):
                for j in range(d + 1):
                    sx = self.degeneracy(x, j)
                    for i in range(d + 2):
                        expected = x if i in (j, j + 1) else (
                            self.degeneracy(self.face(x, i), j - 1) if i < j and d > 0
                            else self.degeneracy(self.face(x, i - 1), j) if d > 0 else None)
                        if expected is not None and self.face(sx, i) != expected:
                            problems.append(f"d{i} s{j} on {x}")
                    for i in range(j + 1):
                        if self.degeneracy(sx, i) != self.degeneracy(self.degeneracy(x, i), j + 1):
                            problems.append(f"s{i} s{j} on {x}")
                if d < 2:
                    continue
                for j in range(d + 1):
                    dj = self.face(x, j)
                    for i in range(j):
                        if self.face(dj, i) != self.face(self.face(x, i), j - 1):
                            problems.append(f"d{i} d{j} on {x}")
        if problems:
            logger.debug(f"audit of {self.name or 'complex'}: {len(problems)} failures")
        return problems

    # ==================== Construction helpers ====================

    @classmethod
    def from_levels(cls, levels: Sequence[Sequence[E]],
                    face: Callable[[E, int, int], E],
                    degeneracy: Callable[[E, int, int], E],
                    name: str = "", top_dim_cap: int = DEFAULT_TOP_DIM_CAP
                    ) -> Tuple["SimplicialSet", Callable[[E, int], SimplexRef]]:
        """
        Present a simplicial set given level by level.

        `levels[d]` must list every d-simplex, degenerate ones included, and
        the element values double as nondegenerate ids. Returns the complex and
        its normal-form function (element, dimension) → SimplexRef.
        """
        memo: Dict[Tuple[E, int], SimplexRef] = {}

        def normal_form(element: E, d: int) -> SimplexRef:
            key = (element, d)
            cached = memo.get(key)
            if cached is not None:
                return cached
            collapsed = tuple(j for j in range(d)
                              if degeneracy(face(element, d, j), d - 1, j) == element)
            base, current = element, d
            for j in reversed(collapsed):
                base = face(base, current, j + 1)
                current -= 1
            result = SimplexRef(d, base, collapsed)
            memo[key] = result
            return result

        cells: List[List[E]] = []
        face_data: Dict[E, Tuple[SimplexRef, ...]] = {}
        for d, level in enumerate(levels):
            keep = []
            for element in level:
                if d > 0 and normal_form(element, d).epi:
                    continue
                keep.append(element)
                if d > 0:
                    face_data[element] = tuple(normal_form(face(element, d, i), d - 1)
                                               for i in range(d + 1))
            cells.append(keep)
        complex_ = cls(cells, face_data, name=name, top_dim_cap=top_dim_cap)
        return complex_, normal_form

    def same_as(self, other: "SimplicialSet") -> bool:
        return self is other or (self.cells == other.cells and self.faces == other.faces)

    def relabel(self, name: str) -> "SimplicialSet":
        return SimplicialSet(self.cells, self.faces, name=name, top_dim_cap=self.top_dim_cap)

    def __repr__(self) -> str:
        return f"SimplicialSet({self.name or '?'}, counts={list(self.counts())})"


class SimplicialMap:
    """A map of simplicial sets, stored on nondegenerate source simplices."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 assignment: Mapping[Hashable, SimplexRef], check: bool = True):
        self.source = source
        self.target = target
        self.assignment: Dict[Hashable, SimplexRef] = {}
        for sid in source.all_cells():
            if sid not in assignment:
                raise SimplicialError(f"map leaves simplex {sid!r} unassigned")
            value = SimplexRef(*assignment[sid])
            if value.dim != source.dim_of[sid]:
                raise SimplicialError(f"map sends {sid!r} to a simplex of the wrong dimension")
            if target.dim_of.get(value.nondeg_id) != value.base_dim:
                raise SimplicialError(f"map value {value} is not a simplex of the target")
            self.assignment[sid] = value
        if check:
            broken = self.violations()
            if broken:
                raise SimplicialError(f"map does not commute with faces at {broken[0]!r}")

    def evaluate(self, ref: SimplexRef) -> SimplexRef:
        value = self.assignment[ref.nondeg_id]
        if not ref.epi:
            return value
        return self.target.apply(value, surjection(ref.dim, ref.epi))

    def __call__(self, sid: Hashable) -> SimplexRef:
        return self.assignment[sid]

    def violations(self) -> List[Hashable]:
        """Source simplices whose faces are not sent to the faces of their image."""
        bad = []
        for sid, faces in self.source.faces.items():
            value = self.assignment[sid]
            for i, f in enumerate(faces):
                if self.evaluate(f) != self.target.face(value, i):
                    bad.append(sid)
                    break
        return bad

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self ∘ inner."""
        if not inner.target.same_as(self.source):
            raise SimplicialError("maps are not composable")
        return SimplicialMap(inner.source, self.target,
                             {sid: self.evaluate(v) for sid, v in inner.assignment.items()},
                             check=False)

    def key(self) -> Tuple[SimplexRef, ...]:
        """Hashable canonical form: values in source cell order."""
        return tuple(self.assignment[sid] for sid in self.source.all_cells())

    def collision(self) -> Optional[Tuple[Hashable, Hashable]]:
        """A witness that the map is not a monomorphism, or None."""
        seen: Dict[SimplexRef, Hashable] = {}
        for sid in self.source.all_cells():
            value = self.assignment[sid]
            if value.epi:
                return (sid, value)
            if value in seen:
                return (seen[value], sid)
            seen[value] = sid
        return None

    def is_mono(self) -> bool:
        return self.collision() is None

    def image_ids(self) -> Set[Hashable]:
        return {value.nondeg_id for value in self.assignment.values()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.assignment == other.assignment)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SimplicialMap({self.source.name or '?'} → {self.target.name or '?'})"

    @classmethod
    def identity(cls, complex_: SimplicialSet) -> "SimplicialMap":
        return cls(complex_, complex_, {sid: complex_.ref(sid) for sid in complex_.all_cells()},
                   check=False)

    @classmethod
    def inclusion(cls, sub: SimplicialSet, ambient: SimplicialSet) -> "SimplicialMap":
        """The inclusion of a subcomplex sharing ids with the ambient complex."""
        return cls(sub, ambient, {sid: ambient.ref(sid) for sid in sub.all_cells()})

    @classmethod
    def constant(cls, source: SimplicialSet, target: SimplicialSet,
                 vertex: Hashable) -> "SimplicialMap":
        """The map collapsing everything onto one vertex of the target."""
        return cls(source, target,
                   {sid: SimplexRef(source.dim_of[sid], vertex,
                                    tuple(range(source.dim_of[sid])))
                    for sid in source.all_cells()}, check=False)
