"""
Lifting problems, right lifting properties and the small object argument
over the Kan–Quillen generating sets.

All searches are exhaustive over strict simplicial maps, so a missing lift is
a definitive verdict. Squares against a generating set are enumerated
strictly, not up to homotopy.
"""

import logging
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Dict, Hashable, Iterator, List, Optional, Set, Tuple

from .core.cells import cell_presentation, is_isomorphism, replay_cells
from .core.colimits import coproduct, pushout
from .core.maps import MapSearch, enumerate_maps, extensions, pinned_values
from .core.sset import SimplexRef, SimplicialMap, SimplicialSet
from .core.standard import (boundary_inclusion, characteristic_map, horn, horn_inclusion,
                            standard_simplex)
from .errors import ExtensionFailure, ResourceCapExceeded, SimplicialError, SquareError
from .ex import ExComplex, ex, to_sd_side
from .subdivision import sd_iterated, sd_map, subdivide

logger = logging.getLogger("kqlab")


@dataclass
class GeneratingSet:
    """A finite set of monomorphisms A_k ↪ B_k."""

    name: str
    members: List[SimplicialMap]
    dim_cap: int
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"{m.source.name}→{m.target.name}" for m in self.members]
        for member in self.members:
            if not member.is_mono():
                raise SimplicialError(f"generator {member!r} is not a monomorphism")

    @classmethod
    def i_kq(cls, dim_cap: int) -> "GeneratingSet":
        """∂Δ^n ↪ Δ^n for 0 ≤ n ≤ N."""
        return cls("I_KQ", [boundary_inclusion(n) for n in range(dim_cap + 1)], dim_cap)

    @classmethod
    def j_kq(cls, dim_cap: int) -> "GeneratingSet":
        """Λ^n_i ↪ Δ^n for 1 ≤ n ≤ N, 0 ≤ i ≤ n."""
        return cls("J_KQ", [horn_inclusion(n, i) for n in range(1, dim_cap + 1)
                            for i in range(n + 1)], dim_cap)

    @classmethod
    def custom(cls, members: List[SimplicialMap]) -> "GeneratingSet":
        return cls("custom", members, max((m.target.top_dim for m in members), default=0))


class LiftingProblem:
    """A strictly commuting square  A → X over B → Y  with left A → B and right X → Y."""

    def __init__(self, left: SimplicialMap, right: SimplicialMap,
                 top: SimplicialMap, bottom: SimplicialMap):
        if not (top.source.same_as(left.source) and top.target.same_as(right.source)
                and bottom.source.same_as(left.target) and bottom.target.same_as(right.target)):
            raise SquareError("square maps do not compose")
        for sid in left.source.all_cells():
            if right.evaluate(top(sid)) != bottom.evaluate(left(sid)):
                raise SquareError(f"square does not commute at {sid!r}")
        self.left = left
        self.right = right
        self.top = top
        self.bottom = bottom

    def search(self) -> MapSearch:
        return extensions(self.left, self.top, target=self.right.source,
                          over=(self.right, self.bottom))


def find_lift(problem: LiftingProblem) -> Optional[SimplicialMap]:
    """The least diagonal filler B → X, or None when none exists."""
    return problem.search().first()


def squares(member: SimplicialMap, f: SimplicialMap, limit: Optional[int] = None,
            touching: Optional[AbstractSet[Hashable]] = None
            ) -> Iterator[Tuple[SimplicialMap, SimplicialMap]]:
    """Every strictly commuting square from `member` to `f`, as (top, bottom).

    With `touching`, only squares whose top meets those simplices of f.source.
    """
    b, y = member.target, f.target
    if _is_standard(b):
        bottoms = (characteristic_map(y, ref) for ref in y.simplices(b.top_dim))
    else:
        bottoms = iter(enumerate_maps(b, y, limit=limit))
    for bottom in bottoms:
        goal = bottom.compose(member)
        search = MapSearch(member.source, f.source, over=(f, goal), touching=touching)
        for top in search.iter_maps(limit):
            yield top, bottom


def _is_standard(complex_: SimplicialSet) -> bool:
    return complex_.same_as(standard_simplex(max(complex_.top_dim, 0)))


@dataclass
class RLPCertificate:
    """Result of checking every square from a generating set against a map."""

    generating_set: str
    holds: bool
    squares_checked: int
    per_member: Dict[str, int] = field(default_factory=dict)
    witnesses: List[Tuple[str, Tuple, Tuple, Tuple]] = field(default_factory=list)
    failure: Optional[Dict[str, Any]] = None

    def summary(self) -> Dict[str, Any]:
        return {"generating_set": self.generating_set, "holds": self.holds,
                "squares_checked": self.squares_checked, "per_member": self.per_member,
                "failure": self.failure}


def _describe(label: str, top: SimplicialMap, bottom: SimplicialMap) -> Dict[str, Any]:
    return {"member": label, "top": [str(v) for v in top.key()],
            "bottom": [str(v) for v in bottom.key()]}


def has_rlp(f: SimplicialMap, generators: GeneratingSet, limit: Optional[int] = None,
            keep_witnesses: bool = False) -> RLPCertificate:
    """Check the right lifting property of f against every member of a generating set."""
    certificate = RLPCertificate(generators.name, True, 0)
    for label, member in zip(generators.labels, generators.members):
        count = 0
        for top, bottom in squares(member, f, limit):
            count += 1
            certificate.squares_checked += 1
            lift = find_lift(LiftingProblem(member, f, top, bottom))
            if lift is None:
                certificate.holds = False
                certificate.failure = _describe(label, top, bottom)
                certificate.per_member[label] = count
                logger.debug(f"rlp against {generators.name} fails at {label}")
                return certificate
            if keep_witnesses:
                certificate.witnesses.append((label, top.key(), bottom.key(), lift.key()))
        certificate.per_member[label] = count
    return certificate


# ==================== Small object argument ====================

@dataclass
class Square:
    label: str
    member: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def describe(self) -> Dict[str, Any]:
        return _describe(self.label, self.top, self.bottom)


@dataclass
class Factorization:
    """f = second ∘ first with first a relative cell complex."""

    middle: SimplicialSet
    first: SimplicialMap
    second: SimplicialMap
    attachments: List[List[Tuple[str, int]]]
    rounds_used: int
    residual: List[Square]
    certificate: Optional[RLPCertificate] = None
    stopped_by: Optional[str] = None
    residual_complete: bool = True

    @property
    def fixed_point(self) -> bool:
        return not self.residual and self.certificate is not None and self.certificate.holds

    def summary(self) -> Dict[str, Any]:
        return {"middle_counts": list(self.middle.counts()), "rounds_used": self.rounds_used,
                "attached_per_round": [len(r) for r in self.attachments],
                "attached_dims": sorted({d for r in self.attachments for _, d in r}),
                "residual": len(self.residual), "residual_complete": self.residual_complete,
                "fixed_point": self.fixed_point,
                "stopped_by": self.stopped_by}


def unsolved_squares(f: SimplicialMap, generators: GeneratingSet, limit: Optional[int] = None,
                     fresh: Optional[AbstractSet[Hashable]] = None,
                     stop_after: Optional[int] = None) -> Tuple[List[Square], int, bool]:
    """
    Squares from the generators to f without a lift.

    `fresh` restricts the search to squares whose top meets those simplices;
    `stop_after` ends it once that many unsolved squares are found. Returns the
    squares, how many were checked and whether the search ran to the end.
    """
    unsolved = []
    total = 0
    for label, member in zip(generators.labels, generators.members):
        for top, bottom in squares(member, f, limit, touching=fresh):
            total += 1
            if find_lift(LiftingProblem(member, f, top, bottom)) is None:
                unsolved.append(Square(label, member, top, bottom))
                if stop_after is not None and len(unsolved) >= stop_after:
                    return unsolved, total, False
    return unsolved, total, True


def attach(second: SimplicialMap, batch: List[Square],
           name: str = "") -> Tuple[SimplicialMap, SimplicialMap]:
    """
    One round: push out ⊔ A_k → ⊔ B_k along the tops into the current middle.

    Returns the leg M → M' and the induced map M' → Y.
    """
    middle = second.source
    sources, s_inj = coproduct([sq.member.source for sq in batch], name=f"⊔{len(batch)} A")
    targets, t_inj = coproduct([sq.member.target for sq in batch], name=f"⊔{len(batch)} B")
    glued_left = SimplicialMap(sources, targets, {
        (k, sid): SimplexRef(v.dim, (k, v.nondeg_id), v.epi)
        for k, sq in enumerate(batch) for sid, v in sq.member.assignment.items()}, check=False)
    tops = SimplicialMap(sources, middle, {
        (k, sid): v for k, sq in enumerate(batch) for sid, v in sq.top.assignment.items()}, check=False)
    name = name or f"{middle.name}⟨+{len(batch)} cells⟩"
    glued, leg, cells_leg = pushout(tops, glued_left, name=name)
    assignment = {}
    for cell in glued.all_cells():
        side, sid = cell
        if side == 0:
            assignment[cell] = second(sid)
        else:
            k, bid = sid
            assignment[cell] = batch[k].bottom(bid)
    return leg, SimplicialMap(glued, second.target, assignment)


def soa_factorize(f: SimplicialMap, generators: GeneratingSet, round_cap: int,
                  max_cells: Optional[int] = None, limit: Optional[int] = None,
                  residual_sample: int = 20) -> Factorization:
    """
    Bounded small object argument: each round attaches one cell for every
    square that has no lift yet. Stops at a fixed point or at a cap.

    After the first round only squares meeting the cells attached in the
    previous round are examined: every other square factors through the
    previous middle, where it was either solved or filled. When a cap stops
    the run, at most `residual_sample` unsolved squares are kept. The middle
    never grows past `max_cells`: a round that would overflow it is not attached.
    """
    first = SimplicialMap.identity(f.source)
    second = f
    trace: List[List[Tuple[str, int]]] = []
    fresh: Optional[Set[Hashable]] = None
    for round_no in range(round_cap + 1):
        sample = residual_sample if round_no == round_cap else None
        unsolved, total, complete = unsolved_squares(second, generators, limit, fresh, sample)
        logger.debug(f"soa round {round_no}: {len(unsolved)} of {total} squares unsolved")
        if not unsolved:
            certificate = RLPCertificate(generators.name, True, total)
            return Factorization(second.source, first, second, trace, round_no, [], certificate)
        if round_no == round_cap:
            return Factorization(second.source, first, second, trace, round_no, unsolved,
                                 stopped_by="round_cap", residual_complete=complete)
        added = sum(sq.member.target.size() - sq.member.source.size() for sq in unsolved)
        if max_cells is not None and second.source.size() + added > max_cells:
            logger.warning(f"soa stopped before round {round_no + 1}: middle would have "
                           f"{second.source.size() + added} cells")
            return Factorization(second.source, first, second, trace, round_no,
                                 unsolved[:residual_sample], stopped_by="max_cells",
                                 residual_complete=len(unsolved) <= residual_sample)
        cells = sum(map(len, trace)) + len(unsolved)
        name = f"{f.source.name}⟨r{round_no + 1}, +{cells} cells⟩"
        leg, second = attach(second, unsolved, name=name)
        first = leg.compose(first)
        fresh = set(second.source.all_cells()) - leg.image_ids()
        trace.append([(sq.label, sq.member.target.top_dim) for sq in unsolved])
    raise AssertionError("unreachable")


def replay_factorization(factorization: Factorization) -> bool:
    """Rebuild the middle object from the cell presentation of the first factor."""
    replay = replay_cells(factorization.first, cell_presentation(factorization.first))
    return is_isomorphism(replay.comparison)


# ==================== Kan condition ====================

@dataclass
class KanReport:
    complex: str
    dim_cap: int
    horns: Dict[str, int] = field(default_factory=dict)
    deficits: Dict[str, int] = field(default_factory=dict)

    @property
    def kan_up_to(self) -> bool:
        return not any(self.deficits.values())

    @property
    def total_deficit(self) -> int:
        return sum(self.deficits.values())

    def summary(self) -> Dict[str, Any]:
        return {"complex": self.complex, "N": self.dim_cap, "kan_up_to_N": self.kan_up_to,
                "horns": self.horns, "deficits": self.deficits}


def kan_check(complex_: SimplicialSet, dim_cap: int, limit: Optional[int] = None) -> KanReport:
    """For every horn Λ^n_i → K with n ≤ N, whether it extends over Δ^n."""
    report = KanReport(complex_.name, dim_cap)
    for n in range(1, dim_cap + 1):
        for i in range(n + 1):
            inclusion = horn_inclusion(n, i)
            horns = enumerate_maps(inclusion.source, complex_, limit=limit)
            missing = sum(1 for h in horns if extensions(inclusion, h).first() is None)
            report.horns[f"{n},{i}"] = len(horns)
            report.deficits[f"{n},{i}"] = missing
    return report


def ex_kan_check(base: SimplicialSet, dim_cap: int, limit: Optional[int] = None,
                 ex_base: Optional[ExComplex] = None) -> KanReport:
    """
    Kan report of Ex K for horns of dimension ≤ N, reading Ex K only up to N - 1.

    A horn h: Λ^n_i → Ex K fills exactly when its transpose sd Λ^n_i → K
    extends over sd Δ^n, so the top level of Ex K is never built.
    """
    ex_base = ex_base or ex(base, max(dim_cap - 1, 0), max_maps=limit)
    report = KanReport(ex_base.name, dim_cap)
    for n in range(1, dim_cap + 1):
        simplex_sd = subdivide(standard_simplex(n)).complex
        for i in range(n + 1):
            horn_sd = subdivide(horn(n, i))
            embed = SimplicialMap.inclusion(horn_sd.complex, simplex_sd)
            horns = ex_horn_maps(ex_base, n, i, limit)
            missing = 0
            for h in horns:
                fixed = pinned_values(embed, to_sd_side(h, horn_sd, ex_base))
                if fixed is None or MapSearch(simplex_sd, base, fixed=fixed).first() is None:
                    missing += 1
            report.horns[f"{n},{i}"] = len(horns)
            report.deficits[f"{n},{i}"] = missing
    return report


def ex_horn_maps(ex_y: ExComplex, n: int, i: int, limit: Optional[int] = None) -> List[SimplicialMap]:
    ex_y.require(n - 1)
    return enumerate_maps(horn(n, i), ex_y.underlying, limit=limit)


@dataclass
class ExtensionWitness:
    """An extension Δ^n → Ex^2 Y, carried as its double transpose sd^2 Δ^n → Y."""

    n: int
    i: int
    transpose: SimplicialMap

    def summary(self) -> Dict[str, Any]:
        return {"n": self.n, "i": self.i, "cells": self.transpose.source.size()}


def ex_extension_check(y: SimplicialSet, n: int, i: int, h: SimplicialMap,
                       ex_y: ExComplex) -> ExtensionWitness:
    """
    Extend (unit ∘ h): Λ^n_i → Ex^2 Y over Δ^n.

    The double transpose of unit ∘ h is h♭ ∘ sd(lv): sd^2 Λ^n_i → Y, so the
    extension is a map sd^2 Δ^n → Y agreeing with it on sd^2 Λ^n_i.
    """
    ex_y.require(n - 1)
    inclusion = horn_inclusion(n, i)
    if not h.source.same_as(inclusion.source):
        raise SimplicialError("the horn map must start at Λ^n_i")
    horn_sd = subdivide(inclusion.source)
    horn_sd2 = subdivide(horn_sd.complex)
    flat = to_sd_side(h, horn_sd, ex_y)
    prescribed = flat.compose(sd_map(horn_sd.last_vertex, horn_sd2, horn_sd))
    simplex_sd2 = sd_iterated(standard_simplex(n), 2).complex
    fixed = pinned_values(SimplicialMap.inclusion(horn_sd2.complex, simplex_sd2), prescribed)
    found = MapSearch(simplex_sd2, y, fixed=fixed).first() if fixed is not None else None
    if found is None:
        raise ExtensionFailure(f"no extension of a Λ^{n}_{i} horn into Ex^2 {y.name}", {
            "n": n, "i": i, "target": y.name, "horn": [str(v) for v in h.key()],
            "sd2_horn_cells": horn_sd2.complex.size(), "sd2_simplex_cells": simplex_sd2.size()})
    return ExtensionWitness(n, i, found)


def tower_horn_deficits(complex_: SimplicialSet, stages: int, dim_cap: int,
                        limit: Optional[int] = None,
                        max_cells: Optional[int] = None) -> Dict[int, Dict[str, int]]:
    """
    For each stage s ≤ stages, how many horns of K stay unfilled in Ex^s K.

    A horn g: Λ → K fills in Ex^s K when g ∘ lv: sd^s Λ → K extends over
    sd^s Δ^n (lv the composite last-vertex map), which is its s-fold transpose.
    """
    result: Dict[int, Dict[str, int]] = {}
    for s in range(stages + 1):
        result[s] = {}
        for n in range(1, dim_cap + 1):
            try:
                simplex_sd = sd_iterated(standard_simplex(n), s, max_cells=max_cells).complex
            except ResourceCapExceeded as exc:
                logger.warning(f"tower deficits stop at stage {s}, n = {n}: {exc}")
                return result
            for i in range(n + 1):
                inclusion = horn_inclusion(n, i)
                horn_sd = sd_iterated(inclusion.source, s)
                embed = SimplicialMap.inclusion(horn_sd.complex, simplex_sd)
                missing = 0
                for g in enumerate_maps(inclusion.source, complex_, limit=limit):
                    fixed = pinned_values(embed, g.compose(horn_sd.last_vertex))
                    if fixed is None or MapSearch(simplex_sd, complex_, fixed=fixed).first() is None:
                        missing += 1
                result[s][f"{n},{i}"] = missing
    return result


# ==================== Retracts ====================

def retract_closure_check(f: SimplicialMap, g: SimplicialMap,
                          section: Tuple[SimplicialMap, SimplicialMap],
                          retraction: Tuple[SimplicialMap, SimplicialMap],
                          generators: GeneratingSet) -> Dict[str, Any]:
    """
    g is a retract of f; every square against g is lifted by pushing it
    into f, lifting there and retracting the lift.
    """
    i_src, i_tgt = section
    r_src, r_tgt = retraction
    for a, b in ((f.compose(i_src), i_tgt.compose(g)), (g.compose(r_src), r_tgt.compose(f))):
        if a.key() != b.key():
            raise SquareError("retract diagram does not commute")
    if (r_src.compose(i_src).key() != SimplicialMap.identity(g.source).key()
            or r_tgt.compose(i_tgt).key() != SimplicialMap.identity(g.target).key()):
        raise SquareError("retraction is not a left inverse of the section")
    transported = 0
    for label, member in zip(generators.labels, generators.members):
        for top, bottom in squares(member, g):
            lift_f = find_lift(LiftingProblem(member, f, i_src.compose(top), i_tgt.compose(bottom)))
            if lift_f is None:
                return {"source_rlp": False, "transported": transported, "failed_at": label}
            lift_g = r_src.compose(lift_f)
            if lift_g.compose(member).key() != top.key() or g.compose(lift_g).key() != bottom.key():
                return {"source_rlp": True, "transported": transported, "failed_at": label,
                        "closure": False}
            transported += 1
    return {"source_rlp": True, "transported": transported, "closure": True}
