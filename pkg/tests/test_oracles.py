"""
Tests for the homotopy oracles.
"""

import pytest

from kqlab.core import (SimplicialMap, boundary, boundary_inclusion, coproduct, empty, horn,
                        horn_inclusion, point, standard_simplex, standard_sphere)
from kqlab.errors import SimplicialError
from kqlab.oracles import (ChainComplex, collapse_search, edge_path_presentation, euler_agrees,
                           homology, homology_groups, is_homology_equivalence, is_pi0_bijection,
                           pi0, smith_invariants)


# ==================== Smith normal form ====================

def test_smith_invariants():
    assert smith_invariants({}) == []
    assert smith_invariants({0: {0: 2}}) == [2]
    assert smith_invariants({0: {0: 1, 1: 1}, 1: {0: 1, 1: -1}}) == [1, 2]
    assert smith_invariants({0: {0: 1}, 1: {0: 1}}) == [1]


def test_torsion_from_chain_complex():
    # ℤ --2--> ℤ
    chains = ChainComplex([["v"], ["e"]], {1: {0: {0: 2}}})
    result = chains.homology()
    assert result.betti == [0, 0]
    assert result.torsion == [[2], []]
    assert homology_groups(result) == ["Z/2", "0"]


def test_square_defect_detected():
    boundaries = {1: {0: {0: 1}}, 2: {0: {0: 1}}}
    with pytest.raises(SimplicialError):
        ChainComplex([["v"], ["e"], ["t"]], boundaries)
    assert ChainComplex([["v"], ["e"], ["t"]], boundaries, check=False).square_defect() == 2


# ==================== Homology ====================

@pytest.mark.parametrize("n", range(1, 5))
def test_sphere_homology(n):
    result = homology(standard_sphere(n))
    assert result.reduced_betti == [0] * n + [1]
    assert result.torsion == [[]] * (n + 1)
    assert euler_agrees(standard_sphere(n), result)


def test_boundary_homology():
    assert homology(boundary(2)).betti == [1, 1]
    assert homology(boundary(3)).betti == [1, 0, 1]
    assert homology_groups(homology(boundary(2))) == ["Z", "Z"]


@pytest.mark.parametrize("complex_", [standard_simplex(3), horn(3, 0), horn(2, 1)],
                         ids=["simplex", "outer-horn", "inner-horn"])
def test_contractible_complexes_are_acyclic(complex_):
    result = homology(complex_)
    assert result.is_acyclic
    assert ChainComplex.normalized(complex_).square_defect() is None


def test_empty_is_not_acyclic():
    result = homology(empty())
    assert result.betti == []
    assert not result.is_acyclic
    assert result.is_zero


def test_disjoint_union_betti():
    union, _ = coproduct([boundary(2), point()])
    assert homology(union).betti == [2, 1]


# ==================== Equivalences ====================

def test_horn_inclusion_is_equivalence():
    verdict = is_homology_equivalence(horn_inclusion(2, 1))
    assert verdict.equivalent
    assert verdict.homology_iso
    assert verdict.pi0_bijection


def test_boundary_inclusion_is_not_equivalence():
    verdict = is_homology_equivalence(boundary_inclusion(1))
    assert not verdict.equivalent
    assert not verdict.pi0_bijection
    assert not is_homology_equivalence(boundary_inclusion(2)).homology_iso


def test_collapse_to_point_is_equivalence():
    simplex = standard_simplex(2)
    assert is_homology_equivalence(SimplicialMap.constant(simplex, point(), (0,))).equivalent


# ==================== π_0 and edge paths ====================

def test_components():
    assert pi0(boundary(1)).count == 2
    assert pi0(boundary(2)).count == 1
    components = pi0(boundary(1))
    assert components.of((1,)) == (1,)


def test_pi0_bijection():
    assert is_pi0_bijection(horn_inclusion(2, 0))
    assert not is_pi0_bijection(boundary_inclusion(1))


def test_edge_path_presentations():
    assert edge_path_presentation(standard_simplex(2)).generators == []
    circle = edge_path_presentation(boundary(2))
    assert len(circle.generators) == 1
    assert circle.relators == []
    assert len(edge_path_presentation(standard_sphere(1)).generators) == 1


def test_presentation_relators_are_simplified():
    triangle = edge_path_presentation(standard_simplex(2))
    assert triangle.raw_relators == 1
    assert triangle.relators == []
    assert triangle.summary()["raw_relators"] == 1
    tetrahedron = edge_path_presentation(boundary(3))
    assert tetrahedron.raw_relators == 4
    assert tetrahedron.generators == []


def test_edge_path_on_disconnected_complex():
    presentation = edge_path_presentation(boundary(1))
    assert presentation.restricted
    assert presentation.summary()["restricted_to_component"] is True


def test_edge_path_needs_a_vertex():
    with pytest.raises(SimplicialError):
        edge_path_presentation(empty())
    with pytest.raises(SimplicialError):
        edge_path_presentation(standard_simplex(1), base=(0, 1))


# ==================== Collapse ====================

@pytest.mark.parametrize("complex_", [standard_simplex(2), standard_simplex(3), horn(3, 1)],
                         ids=["triangle", "tetrahedron", "horn"])
def test_collapse_certificates_replay(complex_):
    outcome = collapse_search(complex_, budget=500)
    assert outcome.conclusive
    assert outcome.certificate.replay(complex_)


def test_circle_does_not_collapse():
    outcome = collapse_search(boundary(2), budget=500)
    assert not outcome.conclusive
    assert outcome.reason
    assert outcome.summary()["collapsed"] is False


def test_tampered_certificate_fails_replay():
    outcome = collapse_search(standard_simplex(2), budget=500)
    certificate = outcome.certificate
    certificate.pairs = list(reversed(certificate.pairs))
    assert not certificate.replay(standard_simplex(2))
