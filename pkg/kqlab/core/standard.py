"""
Standard simplicial sets: simplices, boundaries, horns, nerves and spheres.

Simplices of Δ^n are named by their vertex tuples, so (0, 2) is the edge
from 0 to 2 and (1,) is a vertex. Boundaries and horns share these ids with
Δ^n, which makes their inclusions the identity on names.
"""

from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import SimplicialError
from .sset import SimplexRef, SimplicialMap, SimplicialSet


def _chain_faces(chain: Tuple) -> Tuple[SimplexRef, ...]:
    d = len(chain) - 1
    if d == 0:
        return ()
    return tuple(SimplexRef(d - 1, chain[:i] + chain[i + 1:], ()) for i in range(d + 1))


def _from_chains(levels: Sequence[Sequence[Tuple]], name: str) -> SimplicialSet:
    faces = {chain: _chain_faces(chain) for level in levels for chain in level}
    return SimplicialSet(levels, faces, name=name)


@lru_cache(maxsize=None)
def standard_simplex(n: int) -> SimplicialSet:
    """Δ^n, the nerve of [n]."""
    if n < 0:
        raise SimplicialError("standard simplex needs n >= 0")
    levels = [list(combinations(range(n + 1), k + 1)) for k in range(n + 1)]
    return _from_chains(levels, f"Δ^{n}")


def point() -> SimplicialSet:
    return standard_simplex(0)


@lru_cache(maxsize=None)
def empty() -> SimplicialSet:
    return SimplicialSet([], {}, name="∅")


@lru_cache(maxsize=None)
def boundary(n: int) -> SimplicialSet:
    """∂Δ^n: every simplex of Δ^n except the top one."""
    if n < 0:
        raise SimplicialError("boundary needs n >= 0")
    top = tuple(range(n + 1))
    simplex = standard_simplex(n)
    return simplex.subcomplex((sid for sid in simplex.all_cells() if sid != top), name=f"∂Δ^{n}")


@lru_cache(maxsize=None)
def horn(n: int, i: int) -> SimplicialSet:
    """Λ^n_i: the boundary of Δ^n without its i-th face."""
    if n < 1:
        raise SimplicialError("horns need n >= 1")
    if not 0 <= i <= n:
        raise SimplicialError(f"horn index {i} out of range for n = {n}")
    top = tuple(range(n + 1))
    omitted = top[:i] + top[i + 1:]
    simplex = standard_simplex(n)
    return simplex.subcomplex((sid for sid in simplex.all_cells() if sid not in (top, omitted)),
                              name=f"Λ^{n}_{i}")


@lru_cache(maxsize=None)
def boundary_inclusion(n: int) -> SimplicialMap:
    return SimplicialMap.inclusion(boundary(n), standard_simplex(n))


@lru_cache(maxsize=None)
def horn_inclusion(n: int, i: int) -> SimplicialMap:
    return SimplicialMap.inclusion(horn(n, i), standard_simplex(n))


@lru_cache(maxsize=None)
def standard_sphere(n: int) -> SimplicialSet:
    """Δ^n/∂Δ^n: one vertex and one nondegenerate n-simplex."""
    from .colimits import quotient

    if n < 1:
        raise SimplicialError("the minimal sphere model needs n >= 1")
    return quotient(standard_simplex(n), boundary(n)).relabel(f"S^{n}")


def characteristic_map(complex_: SimplicialSet, ref: SimplexRef) -> SimplicialMap:
    """The map Δ^n → X classifying an n-simplex of X."""
    simplex = standard_simplex(ref.dim)
    return SimplicialMap(simplex, complex_,
                         {chain: complex_.apply(ref, chain) for chain in simplex.all_cells()},
                         check=False)


def nerve(poset: nx.DiGraph, key: Optional[Callable[[Hashable], object]] = None,
          name: str = "") -> SimplicialSet:
    """
    Order complex of a finite poset.

    `poset` holds an edge a → b whenever a < b (covering relations suffice).
    Nondegenerate k-simplices are the strict chains of length k + 1, listed
    in lexicographic order of a fixed linear extension. Chain tuples are ids.
    """
    if not nx.is_directed_acyclic_graph(poset):
        raise SimplicialError("poset relation has a cycle")
    closure = nx.transitive_closure_dag(poset)
    order = list(nx.lexicographical_topological_sort(closure, key=key))
    position = {v: index for index, v in enumerate(order)}
    successors: Dict[Hashable, List[Hashable]] = {
        v: sorted(closure.successors(v), key=position.__getitem__) for v in order}

    levels: List[List[Tuple]] = [[(v,) for v in order]]
    while levels[-1]:
        levels.append([chain + (w,) for chain in levels[-1] for w in successors[chain[-1]]])
    levels.pop()
    return _from_chains(levels, name or "N(P)")
