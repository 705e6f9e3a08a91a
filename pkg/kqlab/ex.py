"""
Kan's Ex functor, its unit and the truncated Ex^∞ tower.

Level n of Ex K is the set of maps sd Δ^n → K. An element is stored as the
tuple of its values on the nondegenerate simplices of sd Δ^n, in canonical
order; faces and degeneracies act by precomposition with sd of the
cosimplicial operators. Only levels up to a truncation dimension exist.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from .core.deltas import codegeneracy, coface, merge_epis
from .core.maps import enumerate_maps
from .core.sset import SimplexRef, SimplicialMap, SimplicialSet
from .errors import ResourceCapExceeded, SimplicialError, TruncationError
from .subdivision import (Subdivision, last_vertex_operator, sd_operator, sd_simplex,
                          subdivide)

logger = logging.getLogger("kqlab")

Element = Tuple[SimplexRef, ...]


class TruncatedSSet:
    """A simplicial set known only up to `trunc_dim`."""

    def __init__(self, underlying: SimplicialSet, trunc_dim: int):
        if underlying.top_dim > trunc_dim:
            raise SimplicialError("truncated complex has simplices above its truncation")
        self.underlying = underlying
        self.trunc_dim = trunc_dim

    def require(self, depth: int) -> SimplicialSet:
        if depth > self.trunc_dim:
            raise TruncationError(depth, self.trunc_dim)
        return self.underlying

    @property
    def name(self) -> str:
        return self.underlying.name


@lru_cache(maxsize=None)
def _face_positions(n: int, i: int) -> Tuple[int, ...]:
    """For each cell of sd Δ^{n-1}, the index of its image under sd(δ^i) in sd Δ^n."""
    small, big = sd_simplex(n - 1), sd_simplex(n)
    act = sd_operator(coface(n, i))
    return tuple(big.index_of[act(c).nondeg_id] + _offset(big, act(c).dim)
                 for c in small.all_cells())


@lru_cache(maxsize=None)
def _degeneracy_positions(n: int, j: int) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """For each cell of sd Δ^{n+1}, where sd(σ^j) sends it in sd Δ^n and with which epi."""
    small, big = sd_simplex(n), sd_simplex(n + 1)
    act = sd_operator(codegeneracy(n, j))
    result = []
    for c in big.all_cells():
        ref = act(c)
        result.append((small.index_of[ref.nondeg_id] + _offset(small, ref.base_dim), ref.epi))
    return tuple(result)


def _offset(complex_: SimplicialSet, d: int) -> int:
    return sum(complex_.counts()[:d])


def _degenerate(value: SimplexRef, dim: int, epi: Tuple[int, ...]) -> SimplexRef:
    if not epi:
        return value
    return SimplexRef(dim, value.nondeg_id, merge_epis(dim, value.epi, epi))


def ex_face(element: Element, n: int, i: int) -> Element:
    return tuple(element[p] for p in _face_positions(n, i))


@lru_cache(maxsize=None)
def _cell_dims(n: int) -> Tuple[int, ...]:
    cells = sd_simplex(n)
    return tuple(cells.dim_of[c] for c in cells.all_cells())


def ex_degeneracy(element: Element, n: int, j: int) -> Element:
    dims = _cell_dims(n + 1)
    return tuple(_degenerate(element[p], dims[k], epi)
                 for k, (p, epi) in enumerate(_degeneracy_positions(n, j)))


class ExComplex(TruncatedSSet):
    """Ex K up to `trunc_dim`, with the tuple encoding of its elements."""

    def __init__(self, base: SimplicialSet, trunc_dim: int, max_maps: Optional[int] = None):
        if trunc_dim < 0:
            raise SimplicialError("trunc_dim must be non-negative")
        self.base = base
        levels: List[List[Element]] = []
        for n in range(trunc_dim + 1):
            maps = enumerate_maps(sd_simplex(n), base, limit=max_maps)
            levels.append([m.key() for m in maps])
            logger.debug(f"Ex {base.name} level {n}: {len(maps)} elements")
        self.level_sizes = tuple(len(level) for level in levels)
        underlying, self.normal_form = SimplicialSet.from_levels(
            levels, ex_face, ex_degeneracy, name=f"Ex {base.name}")
        super().__init__(underlying, trunc_dim)

    def element_of(self, ref: SimplexRef) -> Element:
        """The full tuple of a (possibly degenerate) simplex of Ex K."""
        element, d = ref.nondeg_id, ref.base_dim
        for j in ref.epi:
            element = ex_degeneracy(element, d, j)
            d += 1
        return element

    def as_map(self, ref: SimplexRef) -> SimplicialMap:
        """The map sd Δ^n → K that a simplex of Ex K is."""
        source = sd_simplex(ref.dim)
        values = self.element_of(ref)
        return SimplicialMap(source, self.base, dict(zip(source.all_cells(), values)), check=False)

    def ref_of(self, element: Element, n: int) -> SimplexRef:
        self.require(n)
        return self.normal_form(element, n)

    def ref_of_map(self, f: SimplicialMap) -> SimplexRef:
        return self.ref_of(f.key(), f.source.top_dim)


def ex(complex_: SimplicialSet, trunc_dim: int, max_maps: Optional[int] = None) -> ExComplex:
    """Ex K, truncated at `trunc_dim`."""
    return ExComplex(complex_, trunc_dim, max_maps=max_maps)


def ex_map(g: SimplicialMap, trunc_dim: int, source: Optional[ExComplex] = None,
           target: Optional[ExComplex] = None) -> SimplicialMap:
    """Ex(g): Ex K → Ex L, postcomposition on every level."""
    source = source or ex(g.source, trunc_dim)
    target = target or ex(g.target, trunc_dim)
    assignment = {}
    for element in source.underlying.all_cells():
        n = source.underlying.dim_of[element]
        assignment[element] = target.ref_of(tuple(g.evaluate(v) for v in element), n)
    return SimplicialMap(source.underlying, target.underlying, assignment, check=False)


def unit_element(complex_: SimplicialSet, ref: SimplexRef) -> Element:
    """The transpose of the last-vertex map at one simplex: chain ↦ x(max chain)."""
    cells = sd_simplex(ref.dim)
    return tuple(complex_.apply(ref, last_vertex_operator(chain)) for chain in cells.all_cells())


def unit_map(complex_: SimplicialSet, trunc_dim: int,
             target: Optional[ExComplex] = None) -> SimplicialMap:
    """K → Ex K, adjoint to the last-vertex map sd K → K."""
    if complex_.top_dim > trunc_dim:
        raise TruncationError(complex_.top_dim, trunc_dim)
    target = target or ex(complex_, trunc_dim)
    assignment = {sid: target.ref_of(unit_element(complex_, complex_.ref(sid)), complex_.dim_of[sid])
                  for sid in complex_.all_cells()}
    return SimplicialMap(complex_, target.underlying, assignment, check=False)


# ==================== Adjunction ====================

def to_ex_side(phi: SimplicialMap, subdivision: Subdivision, target: ExComplex) -> SimplicialMap:
    """Transpose φ: sd K → L to K → Ex L."""
    complex_ = subdivision.base
    assignment = {}
    for x in complex_.all_cells():
        m = complex_.dim_of[x]
        element = tuple(phi.evaluate(subdivision.leg(x, chain)) for chain in sd_simplex(m).all_cells())
        assignment[x] = target.ref_of(element, m)
    return SimplicialMap(complex_, target.underlying, assignment, check=False)


def to_sd_side(psi: SimplicialMap, subdivision: Subdivision, target: ExComplex) -> SimplicialMap:
    """Transpose ψ: K → Ex L to sd K → L."""
    assignment = {}
    for cell in subdivision.complex.all_cells():
        x, chain = subdivision.representative(cell)
        element = target.element_of(psi(x))
        assignment[cell] = element[_position(chain, subdivision.base.dim_of[x])]
    return SimplicialMap(subdivision.complex, target.base, assignment, check=False)


def _position(chain: Tuple, m: int) -> int:
    cells = sd_simplex(m)
    return cells.index_of[chain] + _offset(cells, len(chain) - 1)


@dataclass
class AdjunctionWitness:
    """Outcome of checking maps(sd K, L) ≅ maps(K, Ex L) by transposition."""

    source: str
    target: str
    sd_side: int
    ex_side: int
    pairs: List[Tuple[Tuple[SimplexRef, ...], Tuple[SimplexRef, ...]]] = field(default_factory=list)
    unmatched: List[Any] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sd_side == self.ex_side and not self.unmatched

    def summary(self) -> Dict[str, Any]:
        return {"source": self.source, "target": self.target, "sd_side": self.sd_side,
                "ex_side": self.ex_side, "bijection": self.ok,
                "unmatched": [str(u) for u in self.unmatched[:3]]}


def check_adjunction(complex_: SimplicialSet, target: SimplicialSet, trunc_dim: int,
                     max_maps: Optional[int] = None) -> AdjunctionWitness:
    """Verify the transposition bijection maps(sd K, L) ≅ maps(K, Ex L) element by element."""
    if complex_.top_dim > trunc_dim:
        raise TruncationError(complex_.top_dim, trunc_dim)
    subdivision = subdivide(complex_)
    ex_target = ex(target, trunc_dim, max_maps=max_maps)
    left = enumerate_maps(subdivision.complex, target, limit=max_maps)
    right = enumerate_maps(complex_, ex_target.underlying, limit=max_maps)
    witness = AdjunctionWitness(complex_.name, target.name, len(left), len(right))
    right_keys = {psi.key() for psi in right}
    hit = set()
    for phi in left:
        psi = to_ex_side(phi, subdivision, ex_target)
        if psi.key() not in right_keys or to_sd_side(psi, subdivision, ex_target).key() != phi.key():
            witness.unmatched.append(("sd side", phi.key()))
            continue
        hit.add(psi.key())
        witness.pairs.append((phi.key(), psi.key()))
    for psi in right:
        if psi.key() in hit:
            continue
        phi = to_sd_side(psi, subdivision, ex_target)
        if phi.violations() or to_ex_side(phi, subdivision, ex_target).key() != psi.key():
            witness.unmatched.append(("ex side", psi.key()))
    if not witness.ok:
        logger.warning(f"adjunction check {complex_.name}, {target.name}: "
                       f"{len(witness.unmatched)} unmatched")
    return witness


# ==================== Tower ====================

@dataclass
class ExTowerStage:
    stage: int
    complex: TruncatedSSet
    unit_trace: SimplicialMap


@dataclass
class ExTower:
    """A finite prefix of K → Ex K → Ex^2 K → ..., possibly cut short by a cap."""

    stages: List[ExTowerStage]
    cap_report: Optional[Dict[str, Any]] = None

    @property
    def complete(self) -> bool:
        return self.cap_report is None

    @property
    def last(self) -> ExTowerStage:
        return self.stages[-1]


def ex_tower(complex_: SimplicialSet, stages: int, trunc_dim: int,
             max_maps: Optional[int] = None, max_cells: Optional[int] = None) -> ExTower:
    """Stages 0..stages of the Ex tower with composite unit traces K → Ex^i K."""
    if complex_.top_dim > trunc_dim:
        raise TruncationError(complex_.top_dim, trunc_dim)
    start = TruncatedSSet(complex_, trunc_dim)
    tower = ExTower([ExTowerStage(0, start, SimplicialMap.identity(complex_))])
    for i in range(1, stages + 1):
        previous = tower.last
        try:
            current = ex(previous.complex.underlying, trunc_dim, max_maps=max_maps)
            if max_cells is not None and current.underlying.size() > max_cells:
                raise ResourceCapExceeded("Ex stage size", max_cells,
                                          {"cells": current.underlying.size()})
        except ResourceCapExceeded as exc:
            tower.cap_report = {"stage": i, "completed": i - 1, "what": exc.what,
                                "cap": exc.cap, "reached": exc.reached}
            logger.warning(f"Ex tower of {complex_.name} stopped at stage {i - 1}: {exc}")
            break
        unit = unit_map(previous.complex.underlying, trunc_dim, target=current)
        tower.stages.append(ExTowerStage(i, current, unit.compose(previous.unit_trace)))
    return tower
