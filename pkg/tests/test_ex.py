"""
Tests for Ex, its unit and the sd ⊣ Ex transposition.
"""

import pytest

from kqlab.core import SimplicialMap, boundary, horn, point, standard_simplex
from kqlab.errors import ResourceCapExceeded, TruncationError
from kqlab.ex import TruncatedSSet, check_adjunction, ex, ex_map, ex_tower, unit_map
from kqlab.subdivision import sd_simplex


@pytest.fixture
def ex_interval():
    return ex(standard_simplex(1), 1)


def test_ex_of_point_is_point():
    result = ex(point(), 2)
    assert result.level_sizes == (1, 1, 1)
    assert result.underlying.counts() == (1,)


def test_ex_interval_levels(ex_interval):
    # five maps sd Δ^1 → Δ^1, two of them degenerate
    assert ex_interval.level_sizes == (2, 5)
    assert ex_interval.underlying.counts() == (2, 3)
    assert ex_interval.underlying.audit() == []


def test_ex_element_is_a_map(ex_interval):
    for ref in ex_interval.underlying.simplices(1):
        f = ex_interval.as_map(ref)
        assert f.source.same_as(sd_simplex(1))
        assert f.violations() == []
        assert ex_interval.ref_of_map(f) == ref


def test_truncation_is_enforced(ex_interval):
    assert ex_interval.require(1) is ex_interval.underlying
    with pytest.raises(TruncationError):
        ex_interval.require(2)
    with pytest.raises(TruncationError):
        TruncatedSSet(point(), 0).require(1)


def test_ex_enumeration_cap():
    with pytest.raises(ResourceCapExceeded):
        ex(standard_simplex(2), 2, max_maps=10)


def test_unit_is_mono(ex_interval):
    unit = unit_map(standard_simplex(1), 1, target=ex_interval)
    assert unit.violations() == []
    assert unit.is_mono()


def test_unit_needs_enough_dimensions():
    with pytest.raises(TruncationError):
        unit_map(standard_simplex(2), 1)


def test_ex_map_is_functorial():
    interval = standard_simplex(1)
    collapse = SimplicialMap.constant(interval, point(), (0,))
    source, target = ex(interval, 1), ex(point(), 1)
    image = ex_map(collapse, 1, source, target)
    assert image.violations() == []
    identity = ex_map(SimplicialMap.identity(interval), 1, source, source)
    assert identity.key() == SimplicialMap.identity(source.underlying).key()


def test_adjunction_interval():
    witness = check_adjunction(standard_simplex(1), standard_simplex(1), 1)
    assert witness.sd_side == 5
    assert witness.ex_side == 5
    assert witness.ok
    assert witness.summary()["bijection"] is True


@pytest.mark.parametrize("source", [point(), boundary(1), horn(2, 1)],
                         ids=["point", "two-points", "horn"])
@pytest.mark.parametrize("target", [standard_simplex(1), boundary(2)], ids=["interval", "circle"])
def test_adjunction_bijection(source, target):
    witness = check_adjunction(source, target, max(source.top_dim, 1))
    assert witness.ok
    assert witness.unmatched == []


def test_adjunction_vertex_count():
    witness = check_adjunction(point(), boundary(2), 1)
    assert witness.sd_side == 3


def test_adjunction_rejects_low_truncation():
    with pytest.raises(TruncationError):
        check_adjunction(standard_simplex(2), standard_simplex(1), 1)


def test_tower_unit_traces():
    tower = ex_tower(standard_simplex(1), 2, 1)
    assert tower.complete
    assert [stage.stage for stage in tower.stages] == [0, 1, 2]
    for stage in tower.stages:
        assert stage.unit_trace.violations() == []
        assert stage.unit_trace.is_mono()
        assert stage.unit_trace.target is stage.complex.underlying


def test_tower_stops_at_cap():
    tower = ex_tower(boundary(2), 2, 1, max_cells=10)
    assert not tower.complete
    assert tower.cap_report["completed"] < 2
    assert len(tower.stages) == tower.cap_report["completed"] + 1
