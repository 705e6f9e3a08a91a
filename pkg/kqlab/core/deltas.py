"""
Monotone maps between finite ordinals [m] = {0 < 1 < ... < m}.

A map θ: [m] → [n] is the tuple (θ(0), ..., θ(m)). Degeneracy words are
encoded by their collapsed positions: the strictly increasing tuple of
j < dim with σ(j) = σ(j + 1).
"""

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Tuple

from ..errors import SimplicialError

Monotone = Tuple[int, ...]
Epi = Tuple[int, ...]


@lru_cache(maxsize=None)
def identity(n: int) -> Monotone:
    return tuple(range(n + 1))


@lru_cache(maxsize=None)
def coface(n: int, i: int) -> Monotone:
    """δ^i: [n-1] → [n], the injection missing i."""
    return tuple(k if k < i else k + 1 for k in range(n))


@lru_cache(maxsize=None)
def codegeneracy(n: int, j: int) -> Monotone:
    """σ^j: [n+1] → [n], the surjection hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def compose(outer: Monotone, inner: Monotone) -> Monotone:
    """outer ∘ inner."""
    return tuple(outer[k] for k in inner)


@lru_cache(maxsize=None)
def surjection(dim: int, epi: Epi) -> Monotone:
    """The surjection [dim] ↠ [dim - len(epi)] collapsing the given positions."""
    values = [0]
    for t in range(dim):
        values.append(values[-1] if t in epi else values[-1] + 1)
    return tuple(values)


def collapsed_positions(theta: Monotone) -> Epi:
    return tuple(t for t in range(len(theta) - 1) if theta[t] == theta[t + 1])


def epi_mono(theta: Monotone) -> Tuple[Epi, Monotone]:
    """Factor θ as an injection after a surjection: (collapsed positions, image)."""
    image = tuple(sorted(set(theta)))
    return collapsed_positions(theta), image


@lru_cache(maxsize=None)
def section(dim: int, epi: Epi) -> Monotone:
    """The injection picking the first element of every fiber of the surjection."""
    skipped = {j + 1 for j in epi}
    return tuple(k for k in range(dim + 1) if k not in skipped)


def validate_epi(dim: int, epi: Iterable[int]) -> Epi:
    """Check that a collapsed-position list encodes a surjection out of [dim]."""
    epi = tuple(epi)
    if any(b <= a for a, b in zip(epi, epi[1:])):
        raise SimplicialError(f"collapsed positions {epi} not strictly increasing")
    if epi and (epi[0] < 0 or epi[-1] >= dim):
        raise SimplicialError(f"collapsed positions {epi} out of range for dimension {dim}")
    return epi


def merge_epis(dim: int, first: Epi, second: Epi) -> Epi:
    """Positions of surj(first') ∘ surj(second), where `first` lives on the target of `second`."""
    return collapsed_positions(compose(surjection(dim - len(second), first),
                                       surjection(dim, second)))


def strip_common(dim: int, common: Epi, epi: Epi) -> Epi:
    """Positions of the factor σ' with surj(epi) = σ' ∘ surj(common)."""
    common_set = set(common)
    return tuple(p - sum(1 for c in common if c < p) for p in epi if p not in common_set)


def monotone_maps(m: int, n: int) -> Iterator[Monotone]:
    """All monotone maps [m] → [n] in lexicographic order."""
    return combinations_with_replacement(range(n + 1), m + 1)


def injections(m: int, n: int) -> Iterator[Monotone]:
    """All injective monotone maps [m] → [n] in lexicographic order."""
    return combinations(range(n + 1), m + 1)


def surjection_epis(dim: int, target: int) -> Iterator[Epi]:
    """All collapsed-position words of surjections [dim] ↠ [target]."""
    if target > dim or target < 0:
        return iter(())
    return combinations(range(dim), dim - target)


def binomial_count(dim: int, target: int) -> int:
    """Number of surjections [dim] ↠ [target]."""
    if target > dim or target < 0:
        return 0
    return comb(dim, dim - target)
