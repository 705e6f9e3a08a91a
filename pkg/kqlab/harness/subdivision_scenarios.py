"""
Scenarios for subdivision and Ex: S1 (sd ⊣ Ex), S2 (last-vertex maps) and
S10 (subdivision census and oracle consistency).
"""

from typing import TYPE_CHECKING, Dict, Hashable, Iterator, List, Tuple

import networkx as nx

from ..core.sset import SimplicialSet
from ..core.standard import boundary, horn, point, standard_simplex, standard_sphere
from ..errors import ResourceCapExceeded
from ..ex import check_adjunction
from ..oracles import (ChainComplex, collapse_search, edge_path_presentation, euler_agrees,
                       homology, is_homology_equivalence)
from ..subdivision import face_poset_chain_count, sd_iter, sd_simplex, subdivide

if TYPE_CHECKING:
    from . import ScenarioRegistry
    from ..config import Config
    from .report import ScenarioReport


def last_vertex_corpus(dim_cap: int) -> Iterator[SimplicialSet]:
    """Δ^n, ∂Δ^n and every Λ^n_i for n ≤ dim_cap."""
    yield point()
    for n in range(1, dim_cap + 1):
        yield standard_simplex(n)
        yield boundary(n)
        for i in range(n + 1):
            yield horn(n, i)


def poset_chain_counts(complex_: SimplicialSet) -> List[int]:
    """Strict chains in the face poset of K's nondegenerate simplices, by length."""
    poset = nx.DiGraph()
    poset.add_nodes_from(complex_.all_cells())
    for sid in complex_.all_cells():
        for face in complex_.faces[sid]:
            if not face.epi:
                poset.add_edge(face.nondeg_id, sid)
    closure = nx.transitive_closure_dag(poset)
    chains: Dict[Hashable, List[int]] = {v: [1] for v in closure}
    counts: List[int] = []
    for v in nx.topological_sort(closure):
        for length, number in enumerate(chains[v]):
            while len(counts) <= length:
                counts.append(0)
            counts[length] += number
        for w in closure.successors(v):
            target = chains[w]
            for length, number in enumerate(chains[v]):
                while len(target) <= length + 1:
                    target.append(0)
                target[length + 1] += number
    return counts


def register_subdivision_scenarios(registry: "ScenarioRegistry"):
    """Register S1, S2 and S10."""

    def scenario_s1(report: "ScenarioReport", config: "Config"):
        """maps(sd K, L) ≅ maps(K, Ex L) by explicit transposition."""
        sources = [point(), standard_simplex(1), boundary(1), horn(2, 1)]
        targets = [standard_simplex(1), standard_simplex(2), boundary(2)]
        report.params = {"sources": [k.name for k in sources],
                         "targets": [l.name for l in targets]}
        for k in sources:
            for l in targets:
                label = f"{k.name}, {l.name}"
                try:
                    witness = check_adjunction(k, l, max(k.top_dim, 1), max_maps=config.max_maps)
                except ResourceCapExceeded as e:
                    report.skip(f"bijection {label}", str(e))
                    continue
                report.witnesses[label] = witness.summary()
                report.expect(f"bijection {label}", True, witness.ok, "PAPER")
                if k.top_dim == 0:
                    report.expect(f"|maps(sd {k.name}, {l.name})|", l.count(0) ** k.count(0),
                                  witness.sd_side, "TRIVIAL")
        one = report.witnesses.get(f"{standard_simplex(1).name}, {standard_simplex(1).name}")
        if one is not None:
            report.expect("|maps(sd Δ^1, Δ^1)|", 5, one["sd_side"], "DERIVED")
            report.expect("|maps(Δ^1, Ex Δ^1)|", 5, one["ex_side"], "DERIVED")

    def scenario_s2(report: "ScenarioReport", config: "Config"):
        """The last-vertex maps sd^t X → X are homology equivalences and π_0 bijections."""
        dim_cap = min(config.horn_dim, config.trunc_dim)
        stages = max(config.ex_stages, 1)
        report.params = {"dim_cap": dim_cap, "iterations": stages}
        for x in last_vertex_corpus(dim_cap):
            for t in range(1, stages + 1):
                label = f"sd^{t} {x.name} → {x.name}"
                try:
                    subdivided, last_vertex = sd_iter(x, t, max_cells=config.max_cells,
                                                      top_dim_cap=config.top_dim_cap)
                except ResourceCapExceeded as e:
                    report.skip(label, str(e))
                    break
                verdict = is_homology_equivalence(last_vertex)
                report.expect(f"{label} homology iso", True, verdict.homology_iso, "PAPER")
                report.expect(f"{label} π0 bijection", True, verdict.pi0_bijection, "PAPER")
                chains = ChainComplex.normalized(subdivided)
                report.expect(f"∂∂ = 0 on sd^{t} {x.name}", None, chains.square_defect(),
                              "TRIVIAL")
                report.expect(f"χ(sd^{t} {x.name})", x.euler_characteristic(),
                              subdivided.euler_characteristic(), "ORACLE")
        for x in last_vertex_corpus(dim_cap):
            presentation = edge_path_presentation(x)
            if presentation.generators:
                report.notes.append(f"{x.name} has edge-path generators "
                                    f"{[str(g) for g in presentation.generators]}; "
                                    f"its verdict rests on homology and π0 only")

    def scenario_s10(report: "ScenarioReport", config: "Config"):
        """Subdivision census against chain counting, and oracle consistency."""
        dim_cap = config.horn_dim
        report.params = {"dim_cap": dim_cap, "sphere_cap": 4,
                         "collapse_budget": config.collapse_budget}
        for n in range(dim_cap + 1):
            counts = list(sd_simplex(n).counts())
            expected = [face_poset_chain_count(n, k) for k in range(n + 1)]
            report.expect(f"sd Δ^{n} census", expected, counts, "ORACLE")
        for n in range(1, dim_cap + 1):
            for complex_ in [boundary(n)] + [horn(n, i) for i in range(n + 1)]:
                counts = list(subdivide(complex_).complex.counts())
                report.expect(f"sd {complex_.name} census", poset_chain_counts(complex_),
                              counts, "ORACLE")

        for n in range(1, 5):
            sphere = standard_sphere(n)
            result = homology(sphere)
            report.expect(f"H̃ {sphere.name}", [0] * n + [1], result.reduced_betti, "PAPER")
            report.expect(f"torsion {sphere.name}", [[]] * (n + 1), result.torsion, "PAPER")
            report.expect(f"∂∂ = 0 on {sphere.name}", None,
                          ChainComplex.normalized(sphere).square_defect(), "TRIVIAL")
            report.expect(f"Euler {sphere.name}", True, euler_agrees(sphere, result), "TRIVIAL")

        candidates: List[Tuple[SimplicialSet, bool]] = [
            (standard_simplex(n), True) for n in range(dim_cap + 1)]
        candidates += [(horn(n, i), True) for n in range(2, dim_cap + 1) for i in range(n + 1)]
        candidates += [(subdivide(standard_simplex(2)).complex.relabel("sd Δ^2"), True),
                       (boundary(2), False)]
        for complex_, contractible in candidates:
            outcome = collapse_search(complex_, config.collapse_budget)
            acyclic = homology(complex_).is_acyclic
            report.expect(f"H̃ {complex_.name} = 0", contractible, acyclic, "DERIVED")
            if outcome.conclusive:
                report.expect(f"collapse of {complex_.name} replays", True,
                              outcome.certificate.replay(complex_), "ORACLE")
                report.expect(f"collapse ⇒ acyclic on {complex_.name}", True, acyclic, "ORACLE")
                report.witnesses[f"collapse {complex_.name}"] = outcome.certificate.summary()
            elif contractible:
                report.notes.append(f"collapse search on {complex_.name}: {outcome.reason} "
                                    f"(inconclusive)")
            else:
                report.expect(f"no collapse of {complex_.name}", False, outcome.conclusive,
                              "ORACLE")

    registry.register("S1", scenario_s1, "sd ⊣ Ex transposition bijections")
    registry.register("S2", scenario_s2, "last-vertex maps are equivalences")
    registry.register("S10", scenario_s10, "subdivision census and oracle consistency")
