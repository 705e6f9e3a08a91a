"""
Tests for finite simplicial sets: normal forms, standard objects, maps,
colimits and cell presentations.
"""

from math import comb

import pytest

from kqlab.core import (SimplexRef, SimplicialMap, boundary, boundary_inclusion,
                        cell_presentation, coproduct, cylinder_quotient, empty, enumerate_maps,
                        horn, horn_inclusion, is_isomorphism, point, product, projections,
                        pushout, quotient, replay_cells, standard_simplex, standard_sphere)
from kqlab.core.deltas import coface, codegeneracy, compose, epi_mono, surjection
from kqlab.core.sset import SimplicialSet
from kqlab.errors import ResourceCapExceeded, SimplicialError
from kqlab.oracles import homology


@pytest.fixture
def triangle():
    return standard_simplex(2)


# ==================== Shape ====================

@pytest.mark.parametrize("n", range(7))
def test_standard_simplex_binomial_counts(n):
    simplex = standard_simplex(n)
    assert simplex.counts() == tuple(comb(n + 1, k + 1) for k in range(n + 1))
    assert simplex.top_dim == n


def test_boundary_and_horn_counts():
    assert boundary(2).counts() == (3, 3)
    assert horn(2, 1).counts() == (3, 2)
    assert horn(3, 0).counts() == (4, 6, 3)
    assert boundary(1).counts() == (2,)


def test_empty_complex():
    nothing = empty()
    assert nothing.top_dim == -1
    assert nothing.is_empty()
    assert nothing.counts() == ()
    assert nothing.euler_characteristic() == 0


def test_horn_rejects_dimension_zero():
    with pytest.raises(SimplicialError):
        horn(0, 0)
    with pytest.raises(SimplicialError):
        horn(2, 3)


def test_sphere_model_has_two_cells():
    sphere = standard_sphere(2)
    assert sphere.name == "S^2"
    assert sphere.counts() == (1, 0, 1)
    assert sphere.euler_characteristic() == 2


@pytest.mark.parametrize("complex_", [standard_simplex(3), boundary(3), horn(3, 1),
                                      standard_sphere(3)],
                         ids=["simplex", "boundary", "horn", "sphere"])
def test_identity_audit_passes(complex_):
    assert complex_.audit() == []


def test_top_dim_cap_enforced():
    simplex = standard_simplex(3)
    with pytest.raises(ResourceCapExceeded) as excinfo:
        SimplicialSet(simplex.cells, simplex.faces, top_dim_cap=2)
    assert excinfo.value.reached["dim"] == 3
    assert excinfo.value.cap == 2


# ==================== Normal forms ====================

def test_degenerate_face_normal_form(triangle):
    edge = triangle.ref((0, 1))
    degenerate = triangle.degeneracy(edge, 0)
    assert degenerate == SimplexRef(2, (0, 1), (0,))
    assert triangle.face(degenerate, 0) == edge
    assert triangle.face(degenerate, 1) == edge
    assert triangle.face(degenerate, 2) == SimplexRef(1, (0,), (0,))


def test_apply_matches_epi_mono_factorization(triangle):
    theta = (0, 0, 2)
    epi, image = epi_mono(theta)
    assert epi == (0,)
    assert image == (0, 2)
    assert triangle.apply(triangle.ref((0, 1, 2)), theta) == SimplexRef(2, (0, 2), (0,))


def test_cosimplicial_identity():
    # σ^j δ^j = id
    assert compose(codegeneracy(2, 1), coface(3, 1)) == (0, 1, 2)
    assert surjection(3, (1,)) == (0, 1, 1, 2)


def test_simplices_include_degenerate(triangle):
    # monotone maps [1] → [2]
    assert len(list(triangle.simplices(1))) == 6
    assert len(list(point().simplices(3))) == 1


# ==================== Maps ====================

def test_enumerate_maps_counts(triangle):
    interval = standard_simplex(1)
    assert enumerate_maps(interval, interval, count_only=True) == 3
    assert enumerate_maps(interval, triangle, count_only=True) == 6
    assert enumerate_maps(boundary(1), triangle, count_only=True) == 9
    assert enumerate_maps(empty(), triangle, count_only=True) == 1


def test_enumerate_maps_limit():
    with pytest.raises(ResourceCapExceeded):
        enumerate_maps(standard_simplex(1), standard_simplex(3), limit=3)


def test_maps_close_under_composition(triangle):
    interval = standard_simplex(1)
    inner = enumerate_maps(interval, triangle)
    outer = enumerate_maps(triangle, triangle)
    keys = {f.key() for f in enumerate_maps(interval, triangle)}
    for f in inner:
        for g in outer[:5]:
            assert g.compose(f).key() in keys
            assert g.compose(f).violations() == []


def test_map_check_rejects_non_simplicial(triangle):
    with pytest.raises(SimplicialError):
        SimplicialMap(standard_simplex(1), triangle,
                      {(0,): triangle.ref((0,)), (1,): triangle.ref((1,)),
                       (0, 1): triangle.ref((1, 2))})


def test_inclusion_is_mono():
    inclusion = horn_inclusion(2, 1)
    assert inclusion.is_mono()
    assert inclusion.image_ids() == set(horn(2, 1).all_cells())
    assert not SimplicialMap.constant(standard_simplex(1), point(), (0,)).is_mono()


# ==================== Colimits ====================

def test_pushout_glues_interval_to_circle():
    ends = boundary(1)
    collapse = SimplicialMap.constant(ends, point(), (0,))
    circle, from_point, from_interval = pushout(collapse, SimplicialMap.inclusion(ends,
                                                                                  standard_simplex(1)))
    assert circle.counts() == (1, 1)
    assert homology(circle).betti == [1, 1]
    assert from_interval.violations() == []
    assert from_point.compose(collapse).key() == from_interval.compose(
        SimplicialMap.inclusion(ends, standard_simplex(1))).key()


def test_pushout_universal_property_small():
    ends = boundary(1)
    left = SimplicialMap.inclusion(ends, standard_simplex(1))
    glued, b_leg, c_leg = pushout(left, left)
    target = standard_simplex(1)
    # maps out of the pushout are pairs of maps agreeing on ∂Δ^1
    pairs = sum(1 for f in enumerate_maps(standard_simplex(1), target)
                for g in enumerate_maps(standard_simplex(1), target)
                if f.compose(left).key() == g.compose(left).key())
    assert enumerate_maps(glued, target, count_only=True) == pairs


def test_quotient_of_boundary_is_sphere(triangle):
    assert quotient(triangle, boundary(2)).counts() == (1, 0, 1)


def test_quotient_by_empty_adds_point(triangle):
    assert quotient(triangle, empty()).counts() == (4, 3, 1)


def test_quotient_rejects_non_subcomplex(triangle):
    with pytest.raises(SimplicialError):
        quotient(triangle, [(0, 1)])


def test_coproduct_counts():
    union, injections = coproduct([standard_simplex(1), boundary(2)])
    assert union.counts() == (5, 4)
    assert all(inj.is_mono() for inj in injections)


def test_product_of_intervals():
    interval = standard_simplex(1)
    square = product(interval, interval)
    assert square.counts() == (4, 5, 2)
    assert square.audit() == []
    left, right = projections(interval, interval, square)
    assert left.violations() == []
    assert right.violations() == []


def test_cylinder_quotient_is_cone():
    cone, inclusion = cylinder_quotient(boundary(1))
    assert cone.counts() == (3, 2)
    assert inclusion.is_mono()
    assert homology(cone).is_acyclic


def test_cylinder_quotient_of_empty_is_point():
    cone, _ = cylinder_quotient(empty())
    assert cone.counts() == (1,)


# ==================== Cell presentations ====================

@pytest.mark.parametrize("mono", [boundary_inclusion(2), horn_inclusion(3, 1),
                                  SimplicialMap.inclusion(empty(), boundary(2))],
                         ids=["boundary", "horn", "from-empty"])
def test_cell_presentation_replays(mono):
    attachments = cell_presentation(mono)
    assert len(attachments) == mono.target.size() - mono.source.size()
    replay = replay_cells(mono, attachments)
    assert is_isomorphism(replay.comparison)
    assert replay.leg.key() == replay.comparison.compose(mono).key()


def test_cell_presentation_rejects_non_mono():
    with pytest.raises(SimplicialError):
        cell_presentation(SimplicialMap.constant(standard_simplex(1), point(), (0,)))
