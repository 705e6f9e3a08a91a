"""
Integral simplicial homology from normalized chains.

Boundary matrices are kept sparse. Unit pivots are eliminated exactly in
pure Python; whatever residual block is left goes to sympy's Smith normal
form. All arithmetic is over arbitrary-precision integers.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence, Set

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from ..core.sset import SimplicialMap, SimplicialSet
from ..errors import SimplicialError
from .connectivity import pi0, pi0_map

logger = logging.getLogger("kqlab")

# column index → {row index: coefficient}
Sparse = Dict[int, Dict[int, int]]


def smith_invariants(columns: Sparse) -> List[int]:
    """
    Nonzero invariant factors of a sparse integer matrix.

    Unit entries are pivoted away first; each contributes an invariant 1.
    """
    by_row: Dict[int, Dict[int, int]] = {}
    by_col: Dict[int, Set[int]] = {}
    for c, entries in columns.items():
        for r, v in entries.items():
            if v:
                by_row.setdefault(r, {})[c] = v
                by_col.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(by_row):
            entries = by_row.get(r)
            if not entries:
                continue
            pivot = next((c for c in sorted(entries) if abs(entries[c]) == 1), None)
            if pivot is None:
                continue
            _eliminate(by_row, by_col, r, pivot)
            units += 1
            progress = True
    residual_rows = sorted(r for r, entries in by_row.items() if entries)
    if not residual_rows:
        return [1] * units
    residual_cols = sorted({c for r in residual_rows for c in by_row[r]})
    col_index = {c: t for t, c in enumerate(residual_cols)}
    dense = [[0] * len(residual_cols) for _ in residual_rows]
    for t, r in enumerate(residual_rows):
        for c, v in by_row[r].items():
            dense[t][col_index[c]] = v
    logger.debug(f"smith residual block {len(residual_rows)}x{len(residual_cols)}")
    factors = invariant_factors(Matrix(dense), domain=ZZ)
    return [1] * units + sorted(abs(int(d)) for d in factors if d != 0)


def _eliminate(by_row: Dict[int, Dict[int, int]], by_col: Dict[int, Set[int]],
               r: int, c: int) -> None:
    pivot_row = by_row.pop(r)
    unit = pivot_row[c]
    for other in list(by_col[c]):
        if other == r:
            continue
        target = by_row[other]
        factor = target[c] * unit
        for c2, v in pivot_row.items():
            value = target.get(c2, 0) - factor * v
            if value:
                target[c2] = value
                by_col.setdefault(c2, set()).add(other)
            else:
                target.pop(c2, None)
                by_col[c2].discard(other)
    for c2 in pivot_row:
        by_col[c2].discard(r)
    by_col.pop(c, None)


@dataclass
class HomologyResult:
    """H_d(K; ℤ) ≅ ℤ^betti[d] ⊕ ⊕ ℤ/t for t in torsion[d]."""

    betti: List[int]
    torsion: List[List[int]]

    @property
    def reduced_betti(self) -> List[int]:
        if not self.betti:
            return []
        return [max(self.betti[0] - 1, 0)] + self.betti[1:]

    @property
    def is_acyclic(self) -> bool:
        """Vanishing reduced homology of a nonempty complex."""
        return (bool(self.betti) and self.betti[0] == 1 and not any(self.reduced_betti)
                and not any(self.torsion))

    @property
    def is_zero(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def euler(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    def summary(self) -> Dict[str, Any]:
        return {"betti": self.betti, "torsion": self.torsion, "reduced_betti": self.reduced_betti}


class ChainComplex:
    """
    A bounded chain complex of finitely generated free abelian groups.

    `boundaries[d]` is the sparse matrix of ∂_d: C_d → C_{d-1}.
    """

    def __init__(self, basis: Sequence[Sequence[Hashable]], boundaries: Dict[int, Sparse],
                 check: bool = True):
        self.basis = [list(level) for level in basis]
        self.boundaries = boundaries
        if check:
            broken = self.square_defect()
            if broken is not None:
                raise SimplicialError(f"∂∂ ≠ 0 in degree {broken}")

    @classmethod
    def normalized(cls, complex_: SimplicialSet) -> "ChainComplex":
        """Normalized chains: nondegenerate simplices, degenerate faces count as zero."""
        basis = [list(level) for level in complex_.cells]
        boundaries: Dict[int, Sparse] = {}
        for d in range(1, len(basis)):
            row_of = {sid: t for t, sid in enumerate(basis[d - 1])}
            matrix: Sparse = {}
            for c, sid in enumerate(basis[d]):
                column: Dict[int, int] = {}
                for i, face in enumerate(complex_.faces[sid]):
                    if face.epi:
                        continue
                    r = row_of[face.nondeg_id]
                    column[r] = column.get(r, 0) + (-1) ** i
                matrix[c] = {r: v for r, v in column.items() if v}
            boundaries[d] = matrix
        return cls(basis, boundaries)

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def rank(self, d: int) -> int:
        return len(self.basis[d]) if 0 <= d < len(self.basis) else 0

    def square_defect(self) -> Optional[int]:
        """The least d with ∂_{d-1} ∂_d ≠ 0, or None."""
        for d in range(2, len(self.basis)):
            outer = self.boundaries.get(d - 1, {})
            for column in self.boundaries.get(d, {}).values():
                total: Dict[int, int] = {}
                for mid, v in column.items():
                    for r, w in outer.get(mid, {}).items():
                        total[r] = total.get(r, 0) + v * w
                if any(total.values()):
                    return d
        return None

    def homology(self) -> HomologyResult:
        invariants = {d: smith_invariants(self.boundaries.get(d, {}))
                      for d in range(1, len(self.basis))}
        ranks = {d: len(factors) for d, factors in invariants.items()}
        betti, torsion = [], []
        for d in range(len(self.basis)):
            betti.append(self.rank(d) - ranks.get(d, 0) - ranks.get(d + 1, 0))
            torsion.append([t for t in invariants.get(d + 1, []) if t > 1])
        return HomologyResult(betti, torsion)


def homology(complex_: SimplicialSet) -> HomologyResult:
    """H_*(K; ℤ) through the top dimension of K."""
    result = ChainComplex.normalized(complex_).homology()
    logger.debug(f"H_*({complex_.name}): betti {result.betti}, torsion {result.torsion}")
    return result


def mapping_cone(f: SimplicialMap) -> ChainComplex:
    """Cone(f)_d = C_{d-1}(K) ⊕ C_d(L) with D(a, b) = (−∂a, f(a) + ∂b)."""
    source = ChainComplex.normalized(f.source)
    target = ChainComplex.normalized(f.target)
    top = max(source.top + 1, target.top)
    basis = [[("s", a) for a in (source.basis[d - 1] if 1 <= d <= source.top + 1 else [])]
             + [("t", b) for b in (target.basis[d] if d <= target.top else [])]
             for d in range(top + 1)]
    target_row = [{sid: t for t, sid in enumerate(level)} for level in target.basis]
    boundaries: Dict[int, Sparse] = {}
    for d in range(1, top + 1):
        # rows of degree d - 1: source cells of degree d - 2, then target cells of degree d - 1
        offset = source.rank(d - 2)
        matrix: Sparse = {}
        shift = source.rank(d - 1)
        for c, a in enumerate(source.basis[d - 1] if d - 1 <= source.top else []):
            column = {r: -v for r, v in source.boundaries.get(d - 1, {}).get(c, {}).items()}
            image = f(a)
            if not image.epi:
                r = offset + target_row[d - 1][image.nondeg_id]
                column[r] = column.get(r, 0) + 1
            matrix[c] = {r: v for r, v in column.items() if v}
        for c, _ in enumerate(target.basis[d] if d <= target.top else []):
            matrix[shift + c] = {offset + r: v for r, v in target.boundaries.get(d, {}).get(c, {}).items()}
        boundaries[d] = matrix
    return ChainComplex(basis, boundaries)


@dataclass
class EquivalenceVerdict:
    """Homology isomorphism plus π_0 bijection; a necessary condition for weak equivalence."""

    equivalent: bool
    homology_iso: bool
    pi0_bijection: bool
    failing_degree: Optional[int] = None
    oracle: str = "homology+pi0"
    details: Dict[str, Any] = field(default_factory=dict)

    def summary(self) -> Dict[str, Any]:
        return {"equivalent": self.equivalent, "homology_iso": self.homology_iso,
                "pi0_bijection": self.pi0_bijection, "failing_degree": self.failing_degree,
                "oracle": self.oracle}


def is_homology_equivalence(f: SimplicialMap) -> EquivalenceVerdict:
    """
    Decide whether f induces an isomorphism on integral homology and on π_0.

    H_d(Cone f) ≠ 0 means f_* fails to be injective in degree d - 1 or
    surjective in degree d; the least such d is reported.
    """
    cone = mapping_cone(f).homology()
    failing: Optional[int] = None
    for d, (b, t) in enumerate(zip(cone.betti, cone.torsion)):
        if b or t:
            failing = d
            break
    components = pi0_map(f)
    bijective = len(set(components.values())) == len(components) == pi0(f.target).count
    verdict = EquivalenceVerdict(failing is None and bijective, failing is None, bijective,
                                 failing, details={"cone_betti": cone.betti})
    if not verdict.equivalent:
        logger.debug(f"{f!r} is not a homology equivalence (cone degree {failing})")
    return verdict


def euler_agrees(complex_: SimplicialSet, result: Optional[HomologyResult] = None) -> bool:
    """χ from nondegenerate counts equals the alternating sum of Betti numbers."""
    result = result or homology(complex_)
    return result.euler() == complex_.euler_characteristic()


def homology_groups(result: HomologyResult) -> List[str]:
    """Human-readable groups, e.g. ['Z', '0', 'Z/2']."""
    groups = []
    for b, t in zip(result.betti, result.torsion):
        parts = ["Z" if b == 1 else f"Z^{b}"] if b else []
        parts += [f"Z/{n}" for n in t]
        groups.append(" ⊕ ".join(parts) or "0")
    return groups

