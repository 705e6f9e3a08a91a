"""
Tests for bisimplicial sets, the diagonal adjunction and the counit.
"""

import pytest

from kqlab.bisimplicial import (BiSimplicialMap, adjunction_bijection, closed_form_count,
                                const_geo, counit_fibers, counit_level, counit_map, diag_extend,
                                diag_extend_map, diag_restrict, external_product,
                                fiber_subcomplex, horizontal_level, horn_closed_form,
                                horn_isomorphism, level_map, levelwise_pi0, match_object,
                                pi0_fibration_probe, representable_comparison,
                                restricted_product_comparison, restriction_is_isomorphism,
                                transpose, vertical_level)
from kqlab.core import (boundary, horn, horn_inclusion, is_isomorphism, point, product,
                        standard_simplex)
from kqlab.errors import SimplicialError
from kqlab.harness.bisimplicial_scenarios import collapse_to_point
from kqlab.oracles import homology, is_homology_equivalence


@pytest.fixture
def interval():
    return standard_simplex(1)


@pytest.fixture
def square(interval):
    return external_product(interval, interval)


def test_external_product_counts(square):
    assert square.counts() == {(0, 0): 4, (0, 1): 2, (1, 0): 2, (1, 1): 1}
    assert square.count_simplices(1, 1) == 9
    assert square.audit() == []


def test_transpose_swaps_bidegrees(interval):
    swapped = transpose(external_product(interval, boundary(2)))
    assert swapped.counts() == {(0, 0): 6, (0, 1): 3, (1, 0): 6, (1, 1): 3}
    assert swapped.audit() == []


def test_levels_of_external_product(square):
    assert horizontal_level(square, 0).counts() == (4, 2)
    assert vertical_level(square, 0).counts() == (4, 2)
    assert vertical_level(square, 1).counts() == (6, 3)


def test_level_map_rejects_unknown_direction(square):
    with pytest.raises(SimplicialError):
        level_map(BiSimplicialMap.identity(square), 0, "diagonal")


def test_diagonal_of_external_product_is_product(interval, square):
    restricted = diag_restrict(square)
    assert restricted.counts() == (4, 5, 2)
    comparison = restricted_product_comparison(interval, interval, restricted,
                                               product(interval, interval))
    assert is_isomorphism(comparison)


def test_diag_extend_of_point():
    extension = diag_extend(point())
    assert extension.counts() == {(0, 0): 1}
    assert extension.count_simplices(2, 3) == 1


def test_diag_extend_of_interval(interval, square):
    extension = diag_extend(interval)
    assert extension.counts() == square.counts()
    assert extension.audit() == []


@pytest.mark.parametrize("n", range(3))
def test_representables_match_external_square(n):
    assert representable_comparison(n).is_isomorphism()


def test_diag_extend_map_is_bisimplicial():
    image = diag_extend_map(horn_inclusion(2, 1))
    assert image.violations() == []


# ==================== Horns ====================

def test_closed_form_count_inner_horn():
    # nine pairs of vertices, minus the two covering {0, 2}
    assert closed_form_count(2, 1, 0, 0) == 7


def test_horn_closed_form_rejects_bad_index():
    with pytest.raises(SimplicialError):
        horn_closed_form(0, 0)
    with pytest.raises(SimplicialError):
        horn_closed_form(2, 3)


@pytest.mark.parametrize("n,i", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_diag_extend_of_horn_has_closed_form(n, i):
    comparison = horn_isomorphism(n, i, cap=3)
    assert comparison.isomorphic
    assert comparison.violations == []


def test_inner_horn_counts_at_origin():
    comparison = horn_isomorphism(2, 1, cap=2)
    assert comparison.by_bidegree[(0, 0)] == (7, 7, 7)
    assert comparison.summary()["counts"]["0,0"] == [7, 7, 7]


# ==================== Counit ====================

def test_constant_object(interval):
    constant = const_geo(interval)
    assert constant.counts() == {(0, 0): 2, (0, 1): 1}
    assert constant.count_simplices(3, 1) == 3


def test_counit_is_bisimplicial(interval):
    assert counit_map(interval).violations() == []
    assert counit_map(horn(2, 0)).violations() == []


@pytest.mark.parametrize("k", range(3))
def test_counit_levels_are_equivalences(k):
    for complex_ in (standard_simplex(2), horn(2, 1), boundary(2)):
        assert is_homology_equivalence(counit_level(complex_, k)).equivalent


def test_fiber_subcomplex():
    assert fiber_subcomplex(2, (0, 2)).counts() == (3, 2)
    assert fiber_subcomplex(2, [1]).counts() == (2, 1)
    with pytest.raises(SimplicialError):
        fiber_subcomplex(2, ())
    with pytest.raises(SimplicialError):
        fiber_subcomplex(2, (3,))


@pytest.mark.parametrize("i", [None, 0, 1, 2])
@pytest.mark.parametrize("k", [0, 1])
def test_counit_fibers_match_model(i, k):
    fibers = counit_fibers(2, i, k)
    assert fibers
    for fiber in fibers:
        assert fiber.matches
        assert homology(fiber.complex).is_acyclic


# ==================== Adjunction and matching ====================

@pytest.mark.parametrize("source", [point(), boundary(1), standard_simplex(1)],
                         ids=["point", "two-points", "interval"])
def test_diagonal_adjunction(source, square):
    witness = adjunction_bijection(source, square)
    assert witness.ok


def test_match_object_recovers_levels(interval):
    extension = diag_extend(interval)
    for n in range(2):
        assert restriction_is_isomorphism(extension, n, cap=3)
    match = match_object(standard_simplex(1), extension, cap=3)
    assert match.trunc_dim <= 3


def test_levelwise_pi0_of_diag_extend(interval):
    assert levelwise_pi0(diag_extend(interval)).counts() == interval.counts()


def test_identity_passes_pi0_check(interval):
    identity = BiSimplicialMap.identity(const_geo(interval))
    assert pi0_fibration_probe(identity, 1).passed


def test_strict_pi0_check_rejects_diag_extend_of_interval(interval):
    report = pi0_fibration_probe(collapse_to_point(diag_extend(interval), interval), 2)
    assert not report.passed
    outer = [h for h in report.horns if (h.n, h.i) == (2, 0)][0]
    assert outer.hit < outer.components


def test_pi0_check_passes_on_terminal_extension():
    report = pi0_fibration_probe(collapse_to_point(diag_extend(point()), point()), 2)
    assert report.passed
    assert len(report.horns) == 5
