"""
Scenarios for lifting and fibrancy: S3 (Ex horn extensions), S4 (the Ex
tower against horns), S7 (small object argument) and S8 (cell presentations).
"""

from typing import TYPE_CHECKING, Any, Dict, List, Tuple

from ..core.cells import cell_presentation, replay_cells
from ..core.colimits import coproduct
from ..core.sset import SimplicialMap, SimplicialSet
from ..core.standard import (boundary, boundary_inclusion, empty, horn, horn_inclusion, point,
                             standard_simplex)
from ..errors import ExtensionFailure, ResourceCapExceeded, SimplicialError
from ..ex import ex, ex_tower
from ..lifting import (GeneratingSet, ex_extension_check, ex_horn_maps, ex_kan_check, has_rlp,
                       kan_check, replay_factorization, soa_factorize, tower_horn_deficits)
from ..oracles import is_homology_equivalence

if TYPE_CHECKING:
    from . import ScenarioRegistry
    from ..config import Config
    from .report import ScenarioReport


def to_point(complex_: SimplicialSet) -> SimplicialMap:
    return SimplicialMap.constant(complex_, point(), (0,))


def non_increasing(by_stage: Dict[int, Dict[str, int]]) -> bool:
    stages = sorted(by_stage)
    for earlier, later in zip(stages, stages[1:]):
        for key, value in by_stage[later].items():
            if key in by_stage[earlier] and value > by_stage[earlier][key]:
                return False
    return True


def register_lifting_scenarios(registry: "ScenarioRegistry"):
    """Register S3, S4, S7 and S8."""

    def scenario_s3(report: "ScenarioReport", config: "Config"):
        """Every horn Λ^n_i → Ex Y extends over Δ^n after one more Ex."""
        dim_cap = config.small_horn_dim
        report.params = {"targets": ["Δ^1", "∂Δ^2"], "dim_cap": dim_cap}
        failures: List[Dict[str, Any]] = []
        for y in (standard_simplex(1), boundary(2)):
            for n in range(1, dim_cap + 1):
                ex_y = ex(y, max(n - 1, 1), max_maps=config.max_maps)
                for i in range(n + 1):
                    horns = ex_horn_maps(ex_y, n, i, limit=config.max_maps)
                    missing = 0
                    for h in horns:
                        try:
                            witness = ex_extension_check(y, n, i, h, ex_y)
                        except ExtensionFailure as e:
                            missing += 1
                            failures.append(e.diagnostics)
                            continue
                        if witness.transpose.violations():
                            missing += 1
                            failures.append({"n": n, "i": i, "target": y.name,
                                             "reason": "witness does not replay"})
                    label = f"Λ^{n}_{i} → Ex {y.name}"
                    report.witnesses[label] = {"horn_maps": len(horns),
                                               "extended": len(horns) - missing}
                    report.expect(f"unextended horns {label}", 0, missing, "PAPER")
        if failures:
            report.fail(f"{len(failures)} horn maps into Ex Y did not extend into Ex^2 Y",
                        {"failures": failures[:5]})

    def scenario_s4(report: "ScenarioReport", config: "Config"):
        """Horn deficits along the truncated Ex tower, and Kan reports of its stages."""
        dim_cap = config.small_horn_dim
        corpus = (standard_simplex(1), horn(2, 1), boundary(2))
        report.params = {"complexes": [c.name for c in corpus], "stages": config.ex_stages,
                         "dim_cap": dim_cap}
        for complex_ in corpus:
            deficits = tower_horn_deficits(complex_, config.ex_stages, dim_cap,
                                           limit=config.max_maps, max_cells=config.max_cells)
            report.witnesses[f"deficits {complex_.name}"] = deficits
            report.expect(f"deficits of {complex_.name} non-increasing", True,
                          non_increasing(deficits), "PAPER")
            report.expect(f"{complex_.name} itself is not Kan", True,
                          sum(deficits[0].values()) > 0, "DERIVED")
            if len(deficits) <= config.ex_stages:
                report.skip(f"deficits of {complex_.name} through stage {config.ex_stages}",
                            f"subdivision cap after stage {len(deficits) - 1}")

            # Ex^s K needs only levels below N once its horns are read through Ex^{s-1} K
            tower = ex_tower(complex_, max(config.ex_stages - 1, 0), dim_cap,
                             max_maps=config.max_maps, max_cells=config.max_cells)
            reports = [kan_check(complex_, dim_cap, limit=config.max_maps)]
            for stage in tower.stages[:config.ex_stages]:
                try:
                    reports.append(ex_kan_check(stage.complex.underlying, dim_cap,
                                                limit=config.max_maps))
                except ResourceCapExceeded as e:
                    report.notes.append(f"Kan report of Ex^{stage.stage + 1} {complex_.name} "
                                        f"skipped: {e}")
                    break
            for s, kan in enumerate(reports):
                report.witnesses[f"kan Ex^{s} {complex_.name}"] = kan.summary()
            if len(reports) <= config.ex_stages:
                report.skip(f"Kan reports of {complex_.name} through stage {config.ex_stages}",
                            f"Ex tower stopped after stage {len(reports) - 1}")
            else:
                report.expect(f"Kan reports of {complex_.name} through stage "
                              f"{config.ex_stages}", config.ex_stages + 1, len(reports),
                              "TRIVIAL")

    def soa_case(report: "ScenarioReport", config: "Config", label: str,
                 generators: GeneratingSet, f: SimplicialMap):
        factorization = soa_factorize(f, generators, config.round_cap,
                                      max_cells=config.max_cells, limit=config.max_maps)
        report.witnesses[label] = factorization.summary()
        report.expect(f"{label} composite", f.key(),
                      factorization.second.compose(factorization.first).key(), "TRIVIAL")
        report.expect(f"{label} first factor is mono", True, factorization.first.is_mono(),
                      "PAPER")
        if factorization.middle.size() <= config.collapse_budget:
            report.expect(f"{label} trace replays", True, replay_factorization(factorization),
                          "DERIVED")
        else:
            report.skip(f"{label} trace replays",
                        f"middle has {factorization.middle.size()} cells, replay budget "
                        f"{config.collapse_budget}")
        if generators.name == "J_KQ":
            verdict = is_homology_equivalence(factorization.first)
            report.expect(f"{label} first factor is a homology equivalence", True,
                          verdict.equivalent, "PAPER")
        if factorization.fixed_point:
            certificate = has_rlp(factorization.second, generators, limit=config.max_maps)
            report.expect(f"{label} second factor has the rlp", True, certificate.holds,
                          "PAPER")
        else:
            report.skip(f"{label} fixed point",
                        f"stopped by {factorization.stopped_by} after "
                        f"{factorization.rounds_used} rounds with unsolved squares left")
            report.witnesses[f"{label} residual"] = [sq.describe()
                                                     for sq in factorization.residual[:5]]

    def scenario_s7(report: "ScenarioReport", config: "Config"):
        """Bounded small object argument over I_KQ and J_KQ, one verdict per case."""
        dim_cap = config.small_horn_dim
        fold_source, _ = coproduct([point(), point()], name="Δ^0 ⊔ Δ^0")
        cases: List[Tuple[str, GeneratingSet, SimplicialSet]] = [
            ("I_KQ ∅ → Δ^0", GeneratingSet.i_kq(dim_cap), empty()),
            ("I_KQ ∂Δ^1 → Δ^0", GeneratingSet.i_kq(dim_cap), boundary(1)),
            ("J_KQ fold Δ^0 ⊔ Δ^0 → Δ^0", GeneratingSet.j_kq(dim_cap), fold_source),
            ("J_KQ Λ^2_1 → Δ^0", GeneratingSet.j_kq(dim_cap), horn(2, 1)),
        ]
        report.params = {"dim_cap": dim_cap, "round_cap": config.round_cap,
                         "max_cells": config.max_cells, "cases": [c[0] for c in cases]}
        for label, generators, source in cases:
            try:
                soa_case(report, config, label, generators, to_point(source))
            except ResourceCapExceeded as exc:
                report.skip(label, str(exc))
                report.witnesses[f"{label} cap"] = {"what": exc.what, "cap": exc.cap,
                                                    "reached": exc.reached}
        fold = report.witnesses.get("J_KQ fold Δ^0 ⊔ Δ^0 → Δ^0")
        if fold is not None:
            report.expect("J_KQ on a discrete source needs no rounds", 0, fold["rounds_used"],
                          "DERIVED")
        report.notes.append("a strict J_KQ factorization of Λ^2_1 → Δ^0 has no finite fixed "
                            "point: each inner-horn filler adds an edge that starts a new "
                            "unfilled inner horn")

    def scenario_s8(report: "ScenarioReport", config: "Config"):
        """Cell presentations of monomorphisms replay to isomorphic targets."""
        dim_cap = config.horn_dim
        monos = [boundary_inclusion(n) for n in range(dim_cap + 1)]
        monos += [horn_inclusion(n, i) for n in range(1, dim_cap + 1) for i in range(n + 1)]
        monos += [SimplicialMap.inclusion(horn(2, 1), boundary(2)),
                  SimplicialMap.inclusion(empty(), boundary(2))]
        report.params = {"dim_cap": dim_cap, "monos": len(monos)}
        for mono in monos:
            label = f"{mono.source.name} ↪ {mono.target.name}"
            attachments = cell_presentation(mono)
            replay = replay_cells(mono, attachments)
            report.expect(f"{label} cells", mono.target.size() - mono.source.size(),
                          len(attachments), "TRIVIAL")
            report.expect(f"{label} replays", True, replay.comparison.is_mono()
                          and len(replay.comparison.image_ids()) == replay.complex.size(), "PAPER")
            report.expect(f"{label} replay under the source", replay.leg.key(),
                          replay.comparison.compose(mono).key(), "DERIVED")
        try:
            cell_presentation(to_point(standard_simplex(1)))
            rejected = False
        except SimplicialError:
            rejected = True
        report.expect("non-monomorphism rejected", True, rejected, "TRIVIAL")

    registry.register("S3", scenario_s3, "horn extensions in Ex^2")
    registry.register("S4", scenario_s4, "Ex tower horn deficits")
    registry.register("S7", scenario_s7, "small object argument")
    registry.register("S8", scenario_s8, "cell presentation replay")
