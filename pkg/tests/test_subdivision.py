"""
Tests for barycentric subdivision and last-vertex maps.
"""

import pytest

from kqlab.core import (SimplicialMap, boundary, horn, horn_inclusion, point, standard_simplex,
                        standard_sphere)
from kqlab.errors import ResourceCapExceeded, SimplicialError
from kqlab.oracles import homology, is_homology_equivalence
from kqlab.subdivision import (face_poset_chain_count, is_nonsingular, sd, sd_iter, sd_iterated,
                               sd_map, sd_simplex, subdivide)


def test_sd_simplex_counts():
    assert sd_simplex(0).counts() == (1,)
    assert sd_simplex(1).counts() == (3, 2)
    assert sd_simplex(2).counts() == (7, 12, 6)


@pytest.mark.parametrize("n", range(4))
def test_sd_simplex_matches_chain_count(n):
    assert list(sd_simplex(n).counts()) == [face_poset_chain_count(n, k) for k in range(n + 1)]


def test_chain_count_values():
    assert [face_poset_chain_count(3, k) for k in range(4)] == [15, 50, 60, 24]
    assert face_poset_chain_count(2, -1) == 0


def test_sd_of_boundary():
    complex_, last_vertex = sd(boundary(2))
    assert complex_.counts() == (6, 6)
    assert last_vertex.violations() == []
    assert homology(complex_).betti == [1, 1]


def test_singular_complex_uses_colimit():
    circle = standard_sphere(1)
    assert not is_nonsingular(circle)
    assert is_nonsingular(horn(3, 2))
    with pytest.raises(SimplicialError):
        subdivide(circle, method="nerve")
    result = subdivide(circle)
    assert result.complex.counts() == (2, 2)
    assert result.last_vertex.violations() == []


def test_sd_of_sphere_keeps_homology():
    sphere = standard_sphere(2)
    complex_, last_vertex = sd(sphere)
    assert homology(complex_).betti == [1, 0, 1]
    assert complex_.euler_characteristic() == 2
    assert is_homology_equivalence(last_vertex).equivalent


def test_unknown_method_rejected():
    with pytest.raises(SimplicialError):
        subdivide(standard_simplex(1), method="barycentric")


def test_sd_iter_zero_is_identity():
    simplex = standard_simplex(2)
    complex_, last_vertex = sd_iter(simplex, 0)
    assert complex_ is simplex
    assert last_vertex.key() == SimplicialMap.identity(simplex).key()


@pytest.mark.parametrize("complex_", [standard_simplex(2), boundary(2), horn(2, 0),
                                      standard_sphere(1)],
                         ids=["simplex", "boundary", "horn", "circle"])
def test_iterated_last_vertex_is_equivalence(complex_):
    subdivided, last_vertex = sd_iter(complex_, 2)
    assert subdivided.audit() == []
    assert last_vertex.violations() == []
    verdict = is_homology_equivalence(last_vertex)
    assert verdict.homology_iso
    assert verdict.pi0_bijection


def test_sd_iter_cap_reports_stage():
    with pytest.raises(ResourceCapExceeded) as excinfo:
        sd_iterated(standard_simplex(2), 2, max_cells=40)
    assert excinfo.value.reached["stage"] == 2
    assert excinfo.value.reached["completed"] == 1


def test_subdivision_respects_top_dim_cap():
    with pytest.raises(ResourceCapExceeded) as excinfo:
        subdivide(standard_simplex(3), top_dim_cap=2)
    assert excinfo.value.what == "top dimension"
    with pytest.raises(ResourceCapExceeded) as excinfo:
        sd_iter(boundary(3), 2, top_dim_cap=1)
    assert excinfo.value.what == "top dimension"
    assert excinfo.value.reached["completed"] == 0
    assert sd_iter(boundary(3), 1, top_dim_cap=2)[0].counts() == (14, 36, 24)


def test_sd_map_is_functorial():
    inclusion = horn_inclusion(2, 1)
    collapse = SimplicialMap.constant(standard_simplex(2), point(), (0,))
    horn_sd = subdivide(horn(2, 1))
    simplex_sd = subdivide(standard_simplex(2))
    point_sd = subdivide(point())
    composite = sd_map(collapse.compose(inclusion), horn_sd, point_sd)
    stepwise = sd_map(collapse, simplex_sd, point_sd).compose(sd_map(inclusion, horn_sd,
                                                                     simplex_sd))
    assert composite.key() == stepwise.key()
    assert sd_map(inclusion, horn_sd, simplex_sd).is_mono()


def test_last_vertex_is_natural():
    inclusion = horn_inclusion(2, 0)
    horn_sd = subdivide(horn(2, 0))
    simplex_sd = subdivide(standard_simplex(2))
    image = sd_map(inclusion, horn_sd, simplex_sd)
    assert simplex_sd.last_vertex.compose(image).key() == \
        inclusion.compose(horn_sd.last_vertex).key()
