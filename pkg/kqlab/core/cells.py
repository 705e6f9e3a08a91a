"""
Relative cell presentations of monomorphisms A ↪ B.

The nondegenerate simplices of B outside the image of A are attached one at
a time in increasing dimension; each attachment records the boundary of the
new cell as a map ∂Δ^n → (previous stage). Replaying the attachments as
pushouts of boundary inclusions rebuilds B over A.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, List, Sequence

from ..errors import SimplicialError
from .colimits import pushout
from .sset import SimplexRef, SimplicialMap, SimplicialSet
from .standard import boundary, boundary_inclusion


@dataclass(frozen=True)
class Attachment:
    """One cell: its dimension, its name in B and its attaching map."""

    dim: int
    cell: Hashable
    attaching: SimplicialMap


@dataclass
class Replay:
    """Result of replaying attachments: B' with A → B' and the comparison B → B'."""

    complex: SimplicialSet
    leg: SimplicialMap
    comparison: SimplicialMap


def is_isomorphism(f: SimplicialMap) -> bool:
    """Bijective on nondegenerate simplices and never degenerate on them."""
    return f.is_mono() and len(f.image_ids()) == f.target.size()


def cell_presentation(mono: SimplicialMap) -> List[Attachment]:
    """Attachments presenting `mono` as a relative cell complex."""
    collision = mono.collision()
    if collision is not None:
        raise SimplicialError(f"not a monomorphism: {collision[0]!r} and {collision[1]!r} collide")
    ambient = mono.target
    stage = set(mono.image_ids())
    attachments: List[Attachment] = []
    for sid in ambient.all_cells():
        if sid in stage:
            continue
        n = ambient.dim_of[sid]
        current = ambient.subcomplex(stage, name=f"stage {len(attachments)}")
        source = boundary(n)
        attaching = SimplicialMap(source, current,
                                  {chain: ambient.apply(ambient.ref(sid), chain)
                                   for chain in source.all_cells()})
        attachments.append(Attachment(n, sid, attaching))
        stage.add(sid)
    return attachments


def replay_cells(mono: SimplicialMap, attachments: Sequence[Attachment]) -> Replay:
    """
    Rebuild B over A by pushing out one boundary inclusion per attachment.

    The comparison B → B' sends each cell of B to its copy; it is an
    isomorphism exactly when the presentation is faithful.
    """
    current = mono.source
    leg = SimplicialMap.identity(current)
    translate: Dict[Hashable, SimplexRef] = {mono(sid).nondeg_id: current.ref(sid)
                                             for sid in current.all_cells()}
    for step in attachments:
        attaching = step.attaching

        def carry(ref: SimplexRef) -> SimplexRef:
            value = translate[ref.nondeg_id]
            return current.degenerate(value, ref.dim, ref.epi) if ref.epi else value

        onto_current = SimplicialMap(attaching.source, current,
                                     {sid: carry(v) for sid, v in attaching.assignment.items()})
        glued, old_leg, cell_leg = pushout(onto_current, boundary_inclusion(step.dim))
        translate = {bid: old_leg.evaluate(ref) for bid, ref in translate.items()}
        translate[step.cell] = cell_leg(tuple(range(step.dim + 1)))
        leg = old_leg.compose(leg)
        current = glued

    ambient = mono.target
    comparison = SimplicialMap(ambient, current, {sid: translate[sid] for sid in ambient.all_cells()})
    return Replay(current, leg, comparison)

