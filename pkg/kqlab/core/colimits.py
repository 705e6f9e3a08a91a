"""
Colimits and products of finite simplicial sets.

Every colimit is a quotient of a base complex by the congruence generated by
a list of identified pairs of simplices. `glue` computes that quotient one
dimension at a time with a union-find over the base's nondegenerate
simplices and the already-degenerate images of lower simplices. A class
that contains a degenerate image makes all of its members degenerate;
otherwise it survives as one nondegenerate simplex named by its least
member.
"""

import logging
from typing import Dict, Hashable, Iterable, List, Sequence, Set, Tuple, Union

from ..errors import SimplicialError
from .deltas import merge_epis, strip_common
from .sset import SimplexRef, SimplicialMap, SimplicialSet
from .standard import standard_simplex

logger = logging.getLogger("kqlab")

Relation = Tuple[SimplexRef, SimplexRef]


class _UnionFind:
    """Union-find keyed by arbitrary hashables."""

    def __init__(self):
        self.parent: Dict[Hashable, Hashable] = {}

    def find(self, item: Hashable) -> Hashable:
        parent = self.parent.setdefault(item, item)
        if parent == item:
            return item
        root = self.find(parent)
        self.parent[item] = root
        return root

    def union(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _face_closed(base: SimplicialSet, relations: Iterable[Relation]) -> Dict[int, List[Relation]]:
    by_dim: Dict[int, List[Relation]] = {}
    seen: Set[Relation] = set()
    stack = [(SimplexRef(*x), SimplexRef(*y)) for x, y in relations]
    while stack:
        x, y = stack.pop()
        if x == y or (x, y) in seen:
            continue
        if x.dim != y.dim:
            raise SimplicialError(f"cannot identify simplices of dimensions {x.dim} and {y.dim}")
        seen.add((x, y))
        by_dim.setdefault(x.dim, []).append((x, y))
        if x.dim > 0:
            stack.extend((base.face(x, i), base.face(y, i)) for i in range(x.dim + 1))
    return by_dim


def glue(base: SimplicialSet, relations: Iterable[Relation],
         name: str = "") -> Tuple[SimplicialSet, SimplicialMap]:
    """Quotient of `base` by the congruence generated by `relations`, with its projection."""
    by_dim = _face_closed(base, relations)
    image: Dict[Hashable, SimplexRef] = {}

    def project(ref: SimplexRef) -> SimplexRef:
        value = image[ref.nondeg_id]
        if not ref.epi:
            return value
        return SimplexRef(ref.dim, value.nondeg_id, merge_epis(ref.dim, value.epi, ref.epi))

    cells: List[List[Hashable]] = []
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for d in range(base.top_dim + 1):
        classes = _UnionFind()

        def element(ref: SimplexRef) -> Tuple[str, Hashable]:
            return ("new", ref.nondeg_id) if not ref.epi else ("old", project(ref))

        for x, y in by_dim.get(d, ()):
            classes.union(element(x), element(y))
        members: Dict[Hashable, List[Tuple[str, Hashable]]] = {}
        for item in list(classes.parent):
            members.setdefault(classes.find(item), []).append(item)

        degenerate_image: Dict[Hashable, SimplexRef] = {}
        for root, items in members.items():
            olds = {item[1] for item in items if item[0] == "old"}
            if len(olds) > 1:
                raise SimplicialError("gluing identifies distinct degenerate simplices "
                                     f"{sorted(map(str, olds))}")
            if olds:
                degenerate_image[root] = olds.pop()

        level: List[Hashable] = []
        survivor_of: Dict[Hashable, Hashable] = {}
        for sid in base.nondegenerate(d):
            item = ("new", sid)
            root = classes.find(item) if item in classes.parent else item
            if root in degenerate_image:
                image[sid] = degenerate_image[root]
                continue
            survivor = survivor_of.setdefault(root, sid)
            image[sid] = SimplexRef(d, survivor, ())
            if survivor == sid:
                level.append(sid)
                if d > 0:
                    faces[sid] = tuple(project(f) for f in base.faces[sid])
        cells.append(level)

    quotient = SimplicialSet(cells, faces, name=name, top_dim_cap=base.top_dim_cap)
    projection = SimplicialMap(base, quotient, image, check=False)
    logger.debug(f"glued {base.name or 'complex'} {list(base.counts())} → {list(quotient.counts())}")
    return quotient, projection


def coproduct(complexes: Sequence[SimplicialSet],
              name: str = "") -> Tuple[SimplicialSet, List[SimplicialMap]]:
    """Disjoint union with ids tagged (k, id), and its injections."""
    top = max((c.top_dim for c in complexes), default=-1)
    cells: List[List[Hashable]] = [[] for _ in range(top + 1)]
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for k, complex_ in enumerate(complexes):
        for sid in complex_.all_cells():
            cells[complex_.dim_of[sid]].append((k, sid))
            faces[(k, sid)] = tuple(SimplexRef(f.dim, (k, f.nondeg_id), f.epi)
                                    for f in complex_.faces[sid])
    cap = max((c.top_dim_cap for c in complexes), default=8)
    union = SimplicialSet(cells, faces, name=name or " ⊔ ".join(c.name for c in complexes),
                          top_dim_cap=cap)
    injections = [SimplicialMap(c, union, {sid: union.ref((k, sid)) for sid in c.all_cells()},
                                check=False)
                  for k, c in enumerate(complexes)]
    return union, injections


def pushout(f: SimplicialMap, g: SimplicialMap,
            name: str = "") -> Tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """Pushout of B ← A → C, returned as (P, B → P, C → P)."""
    if not f.source.same_as(g.source):
        raise SimplicialError("pushout legs do not share a source")
    union, (inj_b, inj_c) = coproduct([f.target, g.target])

    def tag(k: int, ref: SimplexRef) -> SimplexRef:
        return SimplexRef(ref.dim, (k, ref.nondeg_id), ref.epi)

    relations = [(tag(0, f(sid)), tag(1, g(sid))) for sid in f.source.all_cells()]
    name = name or f"{f.target.name} ⊔_{f.source.name} {g.target.name}"
    result, projection = glue(union, relations, name=name)
    return result, projection.compose(inj_b), projection.compose(inj_c)


def _subcomplex_ids(complex_: SimplicialSet, sub: Union[SimplicialSet, Iterable[Hashable]]) -> Set[Hashable]:
    if isinstance(sub, SimplicialSet):
        ids = set(sub.all_cells())
        for sid in ids:
            if sid not in complex_.dim_of or complex_.faces[sid] != sub.faces[sid]:
                raise SimplicialError(f"{sub.name or 'subcomplex'} is not a subcomplex of {complex_.name}")
        return ids
    ids = set(sub)
    if not ids <= set(complex_.dim_of):
        raise SimplicialError("subcomplex mentions unknown simplices")
    if not complex_.is_closed(ids):
        raise SimplicialError("cannot collapse a set of simplices that is not closed under faces")
    return ids


def quotient_map(complex_: SimplicialSet, sub: Union[SimplicialSet, Iterable[Hashable]],
                 name: str = "") -> SimplicialMap:
    """The projection K → K/A collapsing a subcomplex to a point."""
    ids = _subcomplex_ids(complex_, sub)
    name = name or f"{complex_.name}/{getattr(sub, 'name', 'A')}"
    if not ids:
        _, (inj, _) = coproduct([complex_, standard_simplex(0)], name=name)
        return inj
    apex = next(sid for sid in complex_.nondegenerate(0) if sid in ids)
    relations = [(complex_.ref(sid), SimplexRef(complex_.dim_of[sid], apex,
                                                tuple(range(complex_.dim_of[sid]))))
                 for sid in complex_.all_cells() if sid in ids and sid != apex]
    _, projection = glue(complex_, relations, name=name)
    return projection


def quotient(complex_: SimplicialSet, sub: Union[SimplicialSet, Iterable[Hashable]],
             name: str = "") -> SimplicialSet:
    """K/A. Collapsing the empty subcomplex adds a disjoint base point."""
    return quotient_map(complex_, sub, name=name).target


def _strip(dim: int, x: SimplexRef, y: SimplexRef) -> SimplexRef:
    common = tuple(sorted(set(x.epi) & set(y.epi)))
    if not common:
        return SimplexRef(dim, (x, y), ())
    reduced = dim - len(common)
    base = (SimplexRef(reduced, x.nondeg_id, strip_common(dim, common, x.epi)),
            SimplexRef(reduced, y.nondeg_id, strip_common(dim, common, y.epi)))
    return SimplexRef(dim, base, common)


def product(first: SimplicialSet, second: SimplicialSet, name: str = "") -> SimplicialSet:
    """
    K × L. Nondegenerate m-simplices are the pairs (x, y) of m-simplices
    whose degeneracy words collapse disjoint sets of positions; the pair is
    its own id.
    """
    top = first.top_dim + second.top_dim if not (first.is_empty() or second.is_empty()) else -1
    cells: List[List[Hashable]] = []
    faces: Dict[Hashable, Tuple[SimplexRef, ...]] = {}
    for m in range(top + 1):
        level = []
        right = list(second.simplices(m))
        for x in first.simplices(m):
            for y in right:
                if set(x.epi) & set(y.epi):
                    continue
                level.append((x, y))
                if m > 0:
                    faces[(x, y)] = tuple(_strip(m - 1, first.face(x, i), second.face(y, i))
                                          for i in range(m + 1))
        cells.append(level)
    cap = max(first.top_dim_cap, second.top_dim_cap, top)
    return SimplicialSet(cells, faces, name=name or f"{first.name} × {second.name}", top_dim_cap=cap)


def product_ref(dim: int, x: SimplexRef, y: SimplexRef) -> SimplexRef:
    """Normal form of the pair (x, y) of dim-simplices in K × L."""
    return _strip(dim, x, y)


def projections(first: SimplicialSet, second: SimplicialSet,
                prod: SimplicialSet) -> Tuple[SimplicialMap, SimplicialMap]:
    left = SimplicialMap(prod, first, {pair: pair[0] for pair in prod.all_cells()}, check=False)
    right = SimplicialMap(prod, second, {pair: pair[1] for pair in prod.all_cells()}, check=False)
    return left, right


def cylinder_quotient(complex_: SimplicialSet) -> Tuple[SimplicialSet, SimplicialMap]:
    """
    M = (K × Δ^1)/(K × {1}) with the inclusion K ≅ K × {0} ↪ M.

    For K = ∅ the result is Δ^0 (the collapsed end alone).
    """
    interval = standard_simplex(1)
    cylinder = product(complex_, interval)
    far_end = [pair for pair in cylinder.all_cells() if pair[1].nondeg_id == (1,)]
    projection = quotient_map(cylinder, far_end, name=f"C({complex_.name})")
    cone = projection.target

    def bottom(sid: Hashable) -> SimplexRef:
        d = complex_.dim_of[sid]
        pair = (complex_.ref(sid), SimplexRef(d, (0,), tuple(range(d))))
        return projection.evaluate(cylinder.ref(pair))

    inclusion = SimplicialMap(complex_, cone, {sid: bottom(sid) for sid in complex_.all_cells()})
    return cone, inclusion
