"""
Scenarios for bisimplicial sets: S5 (diag_! of horns), S6 (the counit and
its fibers) and S9 (the π_0 fibration probe on tame inputs).
"""

from typing import TYPE_CHECKING, List, Optional

from ..bisimplicial import (BiSimplexRef, BiSimplicialMap, BiSimplicialSet, adjunction_bijection,
                            const_geo, counit_fibers, counit_level, counit_map, diag_extend,
                            diag_extend_map, diag_restrict, external_product, horn_isomorphism,
                            levelwise_pi0, match_object, match_restriction, pi0_fibration_probe,
                            representable_comparison, restricted_product_comparison)
from ..core.cells import is_isomorphism
from ..core.colimits import product
from ..core.sset import SimplicialMap, SimplicialSet
from ..core.standard import boundary, horn, point, standard_simplex
from ..oracles import collapse_search, homology, is_homology_equivalence

if TYPE_CHECKING:
    from . import ScenarioRegistry
    from ..config import Config
    from .report import ScenarioReport


def counit_corpus(dim_cap: int) -> List[SimplicialSet]:
    corpus = [standard_simplex(n) for n in range(dim_cap + 1)]
    corpus += [horn(n, i) for n in range(1, dim_cap + 1) for i in range(n + 1)]
    return corpus


def collapse_to_point(extension: BiSimplicialSet, complex_: SimplicialSet) -> BiSimplicialMap:
    """diag_!(K) → const Δ^0, through diag_!(K → Δ^0) and the counit of Δ^0."""
    to_point = SimplicialMap.constant(complex_, point(), (0,))
    point_extension = diag_extend(point())
    counit = counit_map(point(), source=point_extension)
    return counit.compose(diag_extend_map(to_point, source=extension, target=point_extension))


def constant_to_point(complex_: SimplicialSet) -> BiSimplicialMap:
    """const K → const Δ^0."""
    source = const_geo(complex_)
    target = const_geo(point())
    assignment = {}
    for m in complex_.all_cells():
        d = complex_.dim_of[m]
        assignment[m] = BiSimplexRef(0, d, (0,), (), tuple(range(d)))
    return BiSimplicialMap(source, target, assignment, check=False)


def register_bisimplicial_scenarios(registry: "ScenarioRegistry"):
    """Register S5, S6 and S9."""

    def scenario_s5(report: "ScenarioReport", config: "Config"):
        """diag_! of every horn against its closed form, and the diagonal adjunction."""
        dim_cap, cap = config.horn_dim, config.bidegree_cap
        report.params = {"dim_cap": dim_cap, "bidegree_cap": cap}
        for n in range(1, dim_cap + 1):
            for i in range(n + 1):
                comparison = horn_isomorphism(n, i, cap)
                report.witnesses[f"Λ^{n}_{i}"] = comparison.summary()
                report.expect(f"diag! Λ^{n}_{i} ≅ closed form", True, comparison.isomorphic,
                              "DERIVED")
                if (n, i) == (2, 1):
                    report.expect("diag! Λ^2_1 at (0,0)", (7, 7, 7),
                                  comparison.by_bidegree[(0, 0)], "DERIVED")

        for n in range(3):
            report.expect(f"diag! Δ^{n} ≅ Δ^{n} □ Δ^{n}", True,
                          representable_comparison(n).is_isomorphism(), "PAPER")

        first, second = standard_simplex(1), boundary(2)
        square = external_product(first, second)
        comparison = restricted_product_comparison(first, second, diag_restrict(square),
                                                   product(first, second))
        report.expect("diag* (Δ^1 □ ∂Δ^2) ≅ Δ^1 × ∂Δ^2", True, is_isomorphism(comparison),
                      "PAPER")

        target = external_product(standard_simplex(1), standard_simplex(1))
        for complex_ in (point(), boundary(1), standard_simplex(1)):
            witness = adjunction_bijection(complex_, target, limit=config.max_maps)
            report.witnesses[f"adjunction {complex_.name}"] = witness.summary()
            report.expect(f"maps(diag! {complex_.name}, Δ^1 □ Δ^1) ≅ maps({complex_.name}, "
                          f"Δ^1 × Δ^1)", True, witness.ok, "PAPER")

    def scenario_s6(report: "ScenarioReport", config: "Config"):
        """The counit diag_! M → const M is a levelwise equivalence with contractible fibers."""
        dim_cap = config.horn_dim
        levels = min(3, config.bidegree_cap)
        report.params = {"dim_cap": dim_cap, "levels": levels,
                         "collapse_budget": config.collapse_budget}
        for complex_ in counit_corpus(dim_cap):
            extension = diag_extend(complex_)
            for k in range(levels + 1):
                verdict = is_homology_equivalence(counit_level(complex_, k, extension))
                report.expect(f"counit of {complex_.name} at vertical degree {k}", True,
                              verdict.equivalent, "PAPER")

        certified = acyclic_only = 0
        for n in range(1, dim_cap + 1):
            indices: List[Optional[int]] = [None] + list(range(n + 1))
            for i in indices:
                name = f"Δ^{n}" if i is None else f"Λ^{n}_{i}"
                for k in range(levels + 1):
                    for fiber in counit_fibers(n, i, k):
                        label = f"{name} level {k} over {fiber.base}"
                        report.expect(f"{label} matches its fiber model", True, fiber.matches,
                                      "DERIVED")
                        outcome = collapse_search(fiber.complex, config.collapse_budget)
                        if outcome.conclusive and outcome.certificate.replay(fiber.complex):
                            certified += 1
                            contractible = True
                        else:
                            acyclic_only += 1
                            contractible = homology(fiber.complex).is_acyclic
                        report.expect(f"{label} contractible", True, contractible, "PAPER")
        report.witnesses["fibers"] = {"collapse_certified": certified,
                                      "homology_acyclic_only": acyclic_only}

    def scenario_s9(report: "ScenarioReport", config: "Config"):
        """π_0 probe, levelwise π_0 and matching objects on constant or representable inputs.

        The probe computes strict limits, so it only certifies levelwise Kan inputs. diag! Δ^1
        is kept as a witness that the strict probe rejects a map that is not levelwise Kan.
        """
        dim_cap = config.small_horn_dim
        report.params = {"dim_cap": dim_cap, "bidegree_cap": config.bidegree_cap}
        simplex = standard_simplex(1)
        extension = diag_extend(simplex)
        probes = [(f"const {simplex.name} → const Δ^0", constant_to_point(simplex), True),
                  ("diag! Δ^0 → const Δ^0", collapse_to_point(diag_extend(point()), point()),
                   True),
                  (f"diag! {simplex.name} → const Δ^0", collapse_to_point(extension, simplex),
                   dim_cap < 2)]
        for label, f, expected in probes:
            probe = pi0_fibration_probe(f, dim_cap, limit=config.max_maps)
            report.witnesses[f"probe {label}"] = probe.summary()
            report.expect(f"π0 probe {label}", expected, probe.passed, "DERIVED")
        report.notes.append(f"diag! {simplex.name} is not levelwise Kan; the strict probe misses "
                            "a component of the Λ^2_0 pullback")

        components = levelwise_pi0(extension)
        report.expect(f"π0 of diag! {simplex.name}", list(simplex.counts()),
                      list(components.counts()), "DERIVED")
        for n in range(dim_cap + 1):
            match = match_object(standard_simplex(n), extension, config.bidegree_cap,
                                 max_maps=config.max_maps)
            restriction = match_restriction(extension, n, config.bidegree_cap, match)
            report.expect(f"Match_Δ^{n} ≅ level {n}", True, is_isomorphism(restriction),
                          "TRIVIAL")
            if not match.exact:
                report.notes.append(f"{match.name} truncated at vertical degree {match.trunc_dim}")
        report.notes.append("limits are strict; inputs are constant or representable")

    registry.register("S5", scenario_s5, "diag_! of horns in closed form")
    registry.register("S6", scenario_s6, "counit levelwise equivalence and fibers")
    registry.register("S9", scenario_s9, "π_0 fibration probe")
