"""
Tests for lifting problems, the small object argument and Kan checks.
"""

import pytest

from kqlab.config import Config
from kqlab.core import (SimplicialMap, boundary, boundary_inclusion, empty, horn,
                        horn_inclusion, point, standard_simplex)
from kqlab.errors import SimplicialError, SquareError
from kqlab.ex import ex, ex_tower
from kqlab.lifting import (GeneratingSet, LiftingProblem, ex_extension_check, ex_horn_maps,
                           ex_kan_check, find_lift, has_rlp, kan_check, replay_factorization,
                           retract_closure_check, soa_factorize, tower_horn_deficits,
                           unsolved_squares)
from kqlab.oracles import is_homology_equivalence


def to_point(complex_):
    return SimplicialMap.constant(complex_, point(), (0,))


@pytest.fixture
def interval():
    return standard_simplex(1)


def test_generating_sets():
    assert len(GeneratingSet.i_kq(2).members) == 3
    assert len(GeneratingSet.j_kq(2).members) == 5
    assert GeneratingSet.j_kq(2).labels[0] == "Λ^1_0→Δ^1"
    with pytest.raises(SimplicialError):
        GeneratingSet.custom([to_point(boundary(1))])


def test_square_must_commute(interval):
    flipped = SimplicialMap(boundary(1), interval,
                            {(0,): interval.ref((1,)), (1,): interval.ref((0,))})
    with pytest.raises(SquareError):
        LiftingProblem(boundary_inclusion(1), SimplicialMap.identity(interval), flipped,
                       SimplicialMap.identity(interval))


def test_inner_horn_lift_is_identity():
    simplex = standard_simplex(2)
    problem = LiftingProblem(horn_inclusion(2, 1), to_point(simplex), horn_inclusion(2, 1),
                             to_point(simplex))
    lift = find_lift(problem)
    assert lift is not None
    assert lift.key() == SimplicialMap.identity(simplex).key()


def test_reversed_edge_has_no_lift(interval):
    flipped = SimplicialMap(boundary(1), interval,
                            {(0,): interval.ref((1,)), (1,): interval.ref((0,))})
    problem = LiftingProblem(boundary_inclusion(1), to_point(interval), flipped,
                             to_point(interval))
    assert find_lift(problem) is None


def test_rlp_certificates(interval):
    failing = has_rlp(to_point(interval), GeneratingSet.i_kq(1))
    assert not failing.holds
    assert failing.failure["member"] == "∂Δ^1→Δ^1"

    assert has_rlp(SimplicialMap.identity(interval), GeneratingSet.j_kq(2)).holds
    assert has_rlp(to_point(boundary(1)), GeneratingSet.j_kq(2)).holds
    assert not has_rlp(to_point(standard_simplex(2)), GeneratingSet.j_kq(2)).holds


def test_rlp_keeps_witnesses():
    certificate = has_rlp(SimplicialMap.identity(point()), GeneratingSet.i_kq(1),
                          keep_witnesses=True)
    assert certificate.holds
    assert len(certificate.witnesses) == certificate.squares_checked


# ==================== Small object argument ====================

def test_soa_from_empty_adds_a_point():
    f = to_point(empty())
    factorization = soa_factorize(f, GeneratingSet.i_kq(1), round_cap=3)
    assert factorization.fixed_point
    assert factorization.rounds_used == 1
    assert factorization.middle.counts() == (1,)
    assert factorization.first.is_mono()
    assert factorization.second.compose(factorization.first).key() == f.key()
    assert replay_factorization(factorization)


def test_soa_discrete_source_is_already_fibrant():
    factorization = soa_factorize(to_point(boundary(1)), GeneratingSet.j_kq(2), round_cap=3)
    assert factorization.fixed_point
    assert factorization.rounds_used == 0
    assert factorization.attachments == []


def test_soa_stops_at_round_cap():
    f = to_point(horn(2, 1))
    factorization = soa_factorize(f, GeneratingSet.j_kq(2), round_cap=1)
    assert not factorization.fixed_point
    assert factorization.stopped_by == "round_cap"
    assert factorization.residual
    assert factorization.second.compose(factorization.first).key() == f.key()
    assert factorization.first.is_mono()
    assert is_homology_equivalence(factorization.first).equivalent
    assert replay_factorization(factorization)
    assert factorization.summary()["residual"] == len(factorization.residual)


def test_soa_cell_cap():
    factorization = soa_factorize(to_point(horn(2, 1)), GeneratingSet.j_kq(2), round_cap=3,
                                  max_cells=5)
    assert factorization.stopped_by == "max_cells"
    assert not factorization.fixed_point
    assert factorization.middle.size() <= 5
    assert factorization.rounds_used == 0
    assert factorization.residual


def square_keys(batch):
    return {(sq.label, sq.top.key(), sq.bottom.key()) for sq in batch}


def test_later_rounds_only_examine_new_cells():
    factorization = soa_factorize(to_point(horn(2, 1)), GeneratingSet.j_kq(2), round_cap=1,
                                  residual_sample=10 ** 6)
    assert factorization.residual_complete
    full, _, complete = unsolved_squares(factorization.second, GeneratingSet.j_kq(2))
    assert complete
    assert square_keys(full) == square_keys(factorization.residual)
    old = factorization.first.image_ids()
    assert all(not sq.top.image_ids() <= old for sq in factorization.residual)


def test_inner_horn_fillers_keep_the_argument_going():
    factorization = soa_factorize(to_point(horn(2, 1)), GeneratingSet.j_kq(2), round_cap=1,
                                  residual_sample=10 ** 6)
    assert ("Λ^2_1→Δ^2", 2) in factorization.attachments[0]
    assert any(sq.label == "Λ^2_1→Δ^2" for sq in factorization.residual)


def test_residual_sample_is_bounded():
    factorization = soa_factorize(to_point(horn(2, 1)), GeneratingSet.j_kq(2), round_cap=1,
                                  residual_sample=3)
    assert len(factorization.residual) == 3
    assert not factorization.residual_complete
    assert factorization.summary()["residual_complete"] is False


def test_middle_names_stay_short():
    factorization = soa_factorize(to_point(horn(2, 1)), GeneratingSet.j_kq(2), round_cap=2,
                                  residual_sample=1)
    name = factorization.middle.name
    assert name.startswith("Λ^2_1⟨r2")
    assert len(name) < 40


# ==================== Kan ====================

def test_interval_fills_inner_horns_only(interval):
    report = kan_check(interval, 2)
    assert report.deficits["1,0"] == 0
    assert report.deficits["2,1"] == 0
    assert report.deficits["2,0"] > 0
    assert not report.kan_up_to
    assert report.summary()["N"] == 2


@pytest.mark.parametrize("complex_", [point(), boundary(1)], ids=["point", "two-points"])
def test_discrete_complexes_are_kan(complex_):
    assert kan_check(complex_, 3).kan_up_to


def test_tower_deficits_do_not_grow():
    deficits = tower_horn_deficits(boundary(2), 1, 2)
    assert sorted(deficits) == [0, 1]
    assert sum(deficits[0].values()) > 0
    for key, value in deficits[1].items():
        assert value <= deficits[0][key]


def test_tower_deficits_of_interval(interval):
    deficits = tower_horn_deficits(interval, 2, 2)
    assert sorted(deficits) == [0, 1, 2]
    assert deficits[0]["2,0"] > 0
    assert deficits[0]["2,1"] == 0
    for earlier, later in ((0, 1), (1, 2)):
        for key, value in deficits[later].items():
            assert value <= deficits[earlier][key]


def test_ex_kan_check_agrees_with_materialized_ex(interval):
    lazy = ex_kan_check(interval, 2)
    full = kan_check(ex(interval, 2).underlying, 2)
    assert lazy.horns == full.horns
    assert lazy.deficits == full.deficits


def test_second_ex_stage_fits_default_caps():
    config = Config()
    tower = ex_tower(boundary(2), 1, 2, max_maps=config.max_maps, max_cells=config.max_cells)
    assert tower.complete
    report = ex_kan_check(tower.last.complex.underlying, 2, limit=config.max_maps)
    assert report.complex.startswith("Ex Ex")
    assert sorted(report.horns) == ["1,0", "1,1", "2,0", "2,1", "2,2"]


def test_horns_into_ex_extend_in_ex_squared(interval):
    ex_y = ex(interval, 1)
    horns = ex_horn_maps(ex_y, 2, 0)
    assert horns
    for h in horns:
        witness = ex_extension_check(interval, 2, 0, h, ex_y)
        assert witness.transpose.violations() == []
        assert witness.summary()["n"] == 2


def test_extension_check_wants_matching_horn(interval):
    ex_y = ex(interval, 1)
    h = ex_horn_maps(ex_y, 2, 1)[0]
    with pytest.raises(SimplicialError):
        ex_extension_check(interval, 2, 0, h, ex_y)


# ==================== Retracts ====================

def test_retract_inherits_lifts():
    f = to_point(boundary(1))
    identity = SimplicialMap.identity(boundary(1))
    top = SimplicialMap.identity(point())
    result = retract_closure_check(f, f, (identity, top), (identity, top),
                                   GeneratingSet.j_kq(2))
    assert result["closure"]
    assert result["transported"] > 0


def test_retract_needs_left_inverse():
    f = to_point(boundary(1))
    squash = SimplicialMap.constant(boundary(1), boundary(1), (0,))
    top = SimplicialMap.identity(point())
    with pytest.raises(SquareError):
        retract_closure_check(f, f, (squash, top), (SimplicialMap.identity(boundary(1)), top),
                              GeneratingSet.j_kq(1))
