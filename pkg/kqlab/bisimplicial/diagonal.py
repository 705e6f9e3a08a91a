"""
The diagonal adjunction diag_! ⊣ diag^* and the counit to constant objects.

diag_! K is glued from external squares Δ^m □ Δ^m, one per nondegenerate
m-simplex x of K. A bisimplex of bidegree (p, q) is a triple (x, α, β) with
α: [p] → [m] and β: [q] → [m]; it is in normal form when x is nondegenerate
and α, β are jointly surjective, and nondegenerate when moreover α and β are
injective. Any other triple is first restricted to the face of x spanned by
im α ∪ im β and then pushed through the Eilenberg–Zilber decomposition of
that face.

const_geo(M) is constant in the horizontal direction and carries M
vertically; the counit forgets the horizontal coordinate.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

from ..core.deltas import (Monotone, coface, compose, epi_mono, identity, injections,
                           merge_epis, monotone_maps, strip_common, surjection,
                           surjection_epis)
from ..core.maps import enumerate_maps
from ..core.sset import DEFAULT_TOP_DIM_CAP, SimplexRef, SimplicialMap, SimplicialSet
from ..core.standard import horn, standard_simplex
from ..errors import SimplicialError
from .bisset import (BiMapSearch, BiSimplexRef, BiSimplicialMap, BiSimplicialSet, level_map)

logger = logging.getLogger("kqlab")


# ==================== External product ====================

def external_product(first: SimplicialSet, second: SimplicialSet, name: str = "") -> BiSimplicialSet:
    """K □ L, with (K □ L)_{j,k} = K_j × L_k."""
    cells: Dict[Tuple[int, int], List[Hashable]] = {}
    hfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    vfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    for x in first.all_cells():
        p = first.dim_of[x]
        for y in second.all_cells():
            q = second.dim_of[y]
            bid = (x, y)
            cells.setdefault((p, q), []).append(bid)
            hfaces[bid] = tuple(BiSimplexRef(p - 1, q, (f.nondeg_id, y), f.epi, ())
                                for f in first.faces[x])
            vfaces[bid] = tuple(BiSimplexRef(p, q - 1, (x, f.nondeg_id), (), f.epi)
                                for f in second.faces[y])
    return BiSimplicialSet(cells, hfaces, vfaces, name=name or f"{first.name} □ {second.name}")


# ==================== diag^* ====================

def diag_ref(ref: BiSimplexRef) -> SimplexRef:
    """Normal form in diag^* X of a bisimplex of bidegree (n, n)."""
    if ref.hdim != ref.vdim:
        raise SimplicialError(f"bisimplex of bidegree {ref.bidegree} is not diagonal")
    n = ref.hdim
    common = tuple(sorted(set(ref.epi_h) & set(ref.epi_v)))
    return SimplexRef(n, (ref.nondeg_id, strip_common(n, common, ref.epi_h),
                          strip_common(n, common, ref.epi_v)), common)


def diag_bisimplex(ref: SimplexRef) -> BiSimplexRef:
    """Inverse of diag_ref."""
    bid, epi_h, epi_v = ref.nondeg_id
    n = ref.dim
    return BiSimplexRef(n, n, bid, merge_epis(n, epi_h, ref.epi), merge_epis(n, epi_v, ref.epi))


def diag_restrict(complex_: BiSimplicialSet, name: str = "") -> SimplicialSet:
    """
    diag^* X: the n-simplices are the bisimplices of bidegree (n, n).

    A diagonal simplex is degenerate exactly when its two degeneracy words
    share a collapsed position, so the nondegenerate n-simplices are the
    (y, E_h, E_v) with disjoint E_h, E_v.
    """
    cells: Dict[int, List[Hashable]] = {}
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for (p, q), level in complex_.cells.items():
        for n in range(max(p, q), p + q + 1):
            pairs = [(eh, ev) for eh in surjection_epis(n, p) for ev in surjection_epis(n, q)
                     if not set(eh) & set(ev)]
            for bid in level:
                for eh, ev in pairs:
                    sid = (bid, eh, ev)
                    cells.setdefault(n, []).append(sid)
                    if n > 0:
                        top = BiSimplexRef(n, n, bid, eh, ev)
                        faces[sid] = tuple(diag_ref(complex_.apply(top, coface(n, i), coface(n, i)))
                                           for i in range(n + 1))
    top_dim = max(cells, default=-1)
    result = SimplicialSet([cells.get(n, []) for n in range(top_dim + 1)], faces,
                           name=name or f"diag* {complex_.name}",
                           top_dim_cap=max(DEFAULT_TOP_DIM_CAP, top_dim))
    logger.debug(f"{result.name}: {list(result.counts())}")
    return result


def restricted_product_comparison(first: SimplicialSet, second: SimplicialSet,
                                  restricted: SimplicialSet,
                                  product_complex: SimplicialSet) -> SimplicialMap:
    """diag^*(K □ L) → K × L, sending ((a, b), E_h, E_v) to the pair (s_{E_h} a, s_{E_v} b)."""
    assignment = {}
    for sid in restricted.all_cells():
        (a, b), eh, ev = sid
        n = restricted.dim_of[sid]
        assignment[sid] = SimplexRef(n, (SimplexRef(n, a, eh), SimplexRef(n, b, ev)), ())
    return SimplicialMap(restricted, product_complex, assignment, check=False)


# ==================== diag_! ====================

def extension_ref(complex_: SimplicialSet, x: SimplexRef, alpha: Monotone,
                  beta: Monotone) -> BiSimplexRef:
    """Normal form in diag_! K of the triple (x, α, β)."""
    image = tuple(sorted(set(alpha) | set(beta)))
    position = {v: t for t, v in enumerate(image)}
    face = complex_.apply(x, image)
    sigma = surjection(face.dim, face.epi)
    epi_h, mono_h = epi_mono(tuple(sigma[position[v]] for v in alpha))
    epi_v, mono_v = epi_mono(tuple(sigma[position[v]] for v in beta))
    return BiSimplexRef(len(alpha) - 1, len(beta) - 1, (face.nondeg_id, mono_h, mono_v),
                        epi_h, epi_v)


def diag_extend(complex_: SimplicialSet, name: str = "") -> BiSimplicialSet:
    """diag_! K as the colimit of Δ^m □ Δ^m over the nondegenerate simplices of K."""
    cells: Dict[Tuple[int, int], List[Hashable]] = {}
    hfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    vfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    for x in complex_.all_cells():
        m = complex_.dim_of[x]
        full = set(range(m + 1))
        top = complex_.ref(x)
        for p in range(m + 1):
            for alpha in injections(p, m):
                for q in range(m + 1):
                    for beta in injections(q, m):
                        if set(alpha) | set(beta) != full:
                            continue
                        bid = (x, alpha, beta)
                        cells.setdefault((p, q), []).append(bid)
                        if p:
                            hfaces[bid] = tuple(
                                extension_ref(complex_, top, compose(alpha, coface(p, i)), beta)
                                for i in range(p + 1))
                        if q:
                            vfaces[bid] = tuple(
                                extension_ref(complex_, top, alpha, compose(beta, coface(q, i)))
                                for i in range(q + 1))
    result = BiSimplicialSet(cells, hfaces, vfaces, name=name or f"diag! {complex_.name}")
    logger.debug(f"{result.name}: {result.counts()}")
    return result


def diag_extend_map(f: SimplicialMap, source: Optional[BiSimplicialSet] = None,
                    target: Optional[BiSimplicialSet] = None) -> BiSimplicialMap:
    """diag_!(f): (x, α, β) ↦ (f(x), α, β) in normal form."""
    source = source or diag_extend(f.source)
    target = target or diag_extend(f.target)
    assignment = {bid: extension_ref(f.target, f(bid[0]), bid[1], bid[2])
                  for bid in source.all_cells()}
    return BiSimplicialMap(source, target, assignment, check=False)


def representable_comparison(n: int) -> BiSimplicialMap:
    """diag_!(Δ^n) → Δ^n □ Δ^n, (x, α, β) ↦ (x ∘ α, x ∘ β)."""
    simplex = standard_simplex(n)
    source = diag_extend(simplex)
    target = external_product(simplex, simplex)
    assignment = {}
    for bid in source.all_cells():
        x, alpha, beta = bid
        assignment[bid] = BiSimplexRef(len(alpha) - 1, len(beta) - 1,
                                       (tuple(x[a] for a in alpha), tuple(x[b] for b in beta)))
    return BiSimplicialMap(source, target, assignment, check=False)


# ==================== Horns in closed form ====================

def _misses_other_vertex(n: int, i: int, alpha: Monotone, beta: Monotone) -> bool:
    used = set(alpha) | set(beta)
    return any(l != i and l not in used for l in range(n + 1))


def _closed_ref(alpha: Monotone, beta: Monotone) -> BiSimplexRef:
    epi_h, mono_h = epi_mono(alpha)
    epi_v, mono_v = epi_mono(beta)
    return BiSimplexRef(len(alpha) - 1, len(beta) - 1, (mono_h, mono_v), epi_h, epi_v)


def horn_closed_form(n: int, i: int) -> BiSimplicialSet:
    """
    The pairs (α: [j] → [n], β: [k] → [n]) such that some vertex l ≠ i lies
    outside im α ∪ im β, with operators acting by precomposition.
    """
    if n < 1 or not 0 <= i <= n:
        raise SimplicialError(f"no horn Λ^{n}_{i}")
    cells: Dict[Tuple[int, int], List[Hashable]] = {}
    hfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    vfaces: Dict[Hashable, Tuple[BiSimplexRef, ...]] = {}
    for p in range(n + 1):
        for alpha in injections(p, n):
            for q in range(n + 1):
                for beta in injections(q, n):
                    if not _misses_other_vertex(n, i, alpha, beta):
                        continue
                    bid = (alpha, beta)
                    cells.setdefault((p, q), []).append(bid)
                    if p:
                        hfaces[bid] = tuple(_closed_ref(compose(alpha, coface(p, t)), beta)
                                            for t in range(p + 1))
                    if q:
                        vfaces[bid] = tuple(_closed_ref(alpha, compose(beta, coface(q, t)))
                                            for t in range(q + 1))
    return BiSimplicialSet(cells, hfaces, vfaces, name=f"Λ^{n}_{i} closed form")


def closed_form_count(n: int, i: int, j: int, k: int) -> int:
    """Number of pairs at bidegree (j, k), by direct enumeration of monotone maps."""
    return sum(1 for alpha in monotone_maps(j, n) for beta in monotone_maps(k, n)
               if _misses_other_vertex(n, i, alpha, beta))


@dataclass
class HornComparison:
    """diag_!(Λ^n_i) against its closed form, bidegree by bidegree."""

    n: int
    i: int
    comparison: BiSimplicialMap
    by_bidegree: Dict[Tuple[int, int], Tuple[int, int, int]] = field(default_factory=dict)
    violations: List[Hashable] = field(default_factory=list)

    @property
    def isomorphic(self) -> bool:
        return (not self.violations and self.comparison.is_isomorphism()
                and all(a == b == c for a, b, c in self.by_bidegree.values()))

    def summary(self) -> Dict[str, Any]:
        return {"horn": f"Λ^{self.n}_{self.i}", "isomorphic": self.isomorphic,
                "counts": {f"{j},{k}": list(v) for (j, k), v in sorted(self.by_bidegree.items())},
                "violations": [str(v) for v in self.violations[:3]]}


def horn_isomorphism(n: int, i: int, cap: int = 4) -> HornComparison:
    """Build diag_!(Λ^n_i) → closed form and compare counts through bidegree (cap, cap)."""
    source = diag_extend(horn(n, i))
    target = horn_closed_form(n, i)
    assignment = {}
    for bid in source.all_cells():
        x, alpha, beta = bid
        assignment[bid] = BiSimplexRef(len(alpha) - 1, len(beta) - 1,
                                       (tuple(x[a] for a in alpha), tuple(x[b] for b in beta)))
    comparison = BiSimplicialMap(source, target, assignment, check=False)
    result = HornComparison(n, i, comparison, violations=comparison.violations())
    for j in range(cap + 1):
        for k in range(cap + 1):
            result.by_bidegree[(j, k)] = (source.count_simplices(j, k), target.count_simplices(j, k),
                                          closed_form_count(n, i, j, k))
    if not result.isomorphic:
        logger.warning(f"diag! Λ^{n}_{i} does not match its closed form")
    return result


# ==================== Constant objects and the counit ====================

def const_geo(complex_: SimplicialSet, name: str = "") -> BiSimplicialSet:
    """The bisimplicial set with M_k at every bidegree (j, k), constant horizontally."""
    cells = {(0, k): level for k, level in enumerate(complex_.cells)}
    vfaces = {m: tuple(BiSimplexRef(0, f.dim, f.nondeg_id, (), f.epi) for f in complex_.faces[m])
              for m in complex_.all_cells()}
    return BiSimplicialSet(cells, {}, vfaces, name=name or f"const {complex_.name}")


def counit_map(complex_: SimplicialSet, source: Optional[BiSimplicialSet] = None,
               target: Optional[BiSimplicialSet] = None) -> BiSimplicialMap:
    """diag_! M → const M, (x, α, β) ↦ x ∘ β with the horizontal coordinate collapsed."""
    source = source or diag_extend(complex_)
    target = target or const_geo(complex_)
    assignment = {}
    for bid in source.all_cells():
        x, alpha, beta = bid
        value = complex_.apply(complex_.ref(x), beta)
        p = len(alpha) - 1
        assignment[bid] = BiSimplexRef(p, value.dim, value.nondeg_id, tuple(range(p)), value.epi)
    return BiSimplicialMap(source, target, assignment, check=False)


def fiber_subcomplex(n: int, complement) -> SimplicialSet:
    """The simplices of Δ^n whose vertex set does not contain all of `complement`."""
    complement = tuple(sorted(set(complement)))
    if not complement:
        raise SimplicialError("the complement set must be nonempty")
    if complement[0] < 0 or complement[-1] > n:
        raise SimplicialError(f"complement {complement} is not a subset of [{n}]")
    simplex = standard_simplex(n)
    wanted = set(complement)
    ids = [sid for sid in simplex.all_cells() if not wanted <= set(sid)]
    return simplex.subcomplex(ids, name=f"F({n}; {','.join(map(str, complement))})")


@dataclass
class CounitFiber:
    """The fiber of a counit level over one vertex of the discrete constant level."""

    vertex: Hashable
    base: Monotone
    complement: Optional[Tuple[int, ...]]
    complex: SimplicialSet
    matches: bool

    def summary(self) -> Dict[str, Any]:
        return {"over": list(self.base), "complement": None if self.complement is None
                else list(self.complement), "counts": list(self.complex.counts()),
                "matches": self.matches}


def counit_level(complex_: SimplicialSet, k: int, extension: Optional[BiSimplicialSet] = None
                 ) -> SimplicialMap:
    """The counit at vertical degree k: diag_!(M)_{•,k} → M_k (discrete)."""
    extension = extension or diag_extend(complex_)
    return level_map(counit_map(complex_, source=extension), k, "vertical")


def counit_fibers(n: int, i: Optional[int], k: int) -> List[CounitFiber]:
    """
    Fibers of the vertical-degree-k counit level of Λ^n_i (or of Δ^n when
    i is None), each compared with fiber_subcomplex(n, T^c) (resp. Δ^n).
    """
    complex_ = standard_simplex(n) if i is None else horn(n, i)
    level = counit_level(complex_, k)
    target = level.target
    by_vertex: Dict[Hashable, List[Hashable]] = {v: [] for v in target.nondegenerate(0)}
    for sid in level.source.all_cells():
        by_vertex[level(sid).nondeg_id].append(sid)
    fibers = []
    for vertex, ids in by_vertex.items():
        m_id, ev = vertex
        base = tuple(m_id[s] for s in surjection(k, ev))
        fiber = level.source.subcomplex(ids, name=f"fiber over {base}")
        if i is None:
            complement, expected = None, standard_simplex(n)
        else:
            complement = tuple(l for l in range(n + 1) if l != i and l not in base)
            expected = fiber_subcomplex(n, complement)
        assignment = {}
        for sid in fiber.all_cells():
            (x, alpha, _), _ = sid
            assignment[sid] = SimplexRef(len(alpha) - 1, tuple(x[a] for a in alpha), ())
        comparison = SimplicialMap(fiber, expected, assignment, check=False)
        matches = (not comparison.violations() and comparison.is_mono()
                   and fiber.size() == expected.size())
        fibers.append(CounitFiber(vertex, base, complement, fiber, matches))
    return fibers


# ==================== Adjunction ====================

@dataclass
class DiagonalAdjunction:
    """Outcome of checking maps(diag_! K, X) ≅ maps(K, diag^* X) by transposition."""

    source: str
    target: str
    extension_side: int
    restriction_side: int
    unmatched: List[Any] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.extension_side == self.restriction_side and not self.unmatched

    def summary(self) -> Dict[str, Any]:
        return {"source": self.source, "target": self.target,
                "extension_side": self.extension_side, "restriction_side": self.restriction_side,
                "bijection": self.ok, "unmatched": [str(u) for u in self.unmatched[:3]]}


def to_restriction_side(f: BiSimplicialMap, complex_: SimplicialSet,
                        restricted: SimplicialSet) -> SimplicialMap:
    """F: diag_! K → X gives K → diag^* X, x ↦ F(x, id, id)."""
    assignment = {}
    for x in complex_.all_cells():
        m = complex_.dim_of[x]
        assignment[x] = diag_ref(f((x, identity(m), identity(m))))
    return SimplicialMap(complex_, restricted, assignment, check=False)


def to_extension_side(g: SimplicialMap, extension: BiSimplicialSet,
                      target: BiSimplicialSet) -> BiSimplicialMap:
    """G: K → diag^* X gives diag_! K → X, (x, α, β) ↦ (α, β)* G(x)."""
    assignment = {}
    for bid in extension.all_cells():
        x, alpha, beta = bid
        assignment[bid] = target.apply(diag_bisimplex(g(x)), alpha, beta)
    return BiSimplicialMap(extension, target, assignment, check=False)


def adjunction_bijection(complex_: SimplicialSet, target: BiSimplicialSet,
                         limit: Optional[int] = None) -> DiagonalAdjunction:
    """Enumerate both hom-sets and check that the transposes are mutually inverse."""
    extension = diag_extend(complex_)
    restricted = diag_restrict(target)
    left = BiMapSearch(extension, target).maps(limit)
    right = enumerate_maps(complex_, restricted, limit=limit)
    witness = DiagonalAdjunction(complex_.name, target.name, len(left), len(right))
    right_keys = {g.key() for g in right}
    for f in left:
        g = to_restriction_side(f, complex_, restricted)
        if g.key() not in right_keys or to_extension_side(g, extension, target).key() != f.key():
            witness.unmatched.append(("extension side", f.key()))
    left_keys = {f.key() for f in left}
    for g in right:
        f = to_extension_side(g, extension, target)
        if f.key() not in left_keys or to_restriction_side(f, complex_, restricted).key() != g.key():
            witness.unmatched.append(("restriction side", g.key()))
    if not witness.ok:
        logger.warning(f"diagonal adjunction {complex_.name}, {target.name}: "
                       f"{len(witness.unmatched)} unmatched")
    return witness
