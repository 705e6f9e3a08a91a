"""
Tests for the scenario registry, reports and runner.
"""

import pytest

from kqlab import harness
from kqlab.config import ALL_SCENARIOS, Config
from kqlab.errors import ExtensionFailure, ResourceCapExceeded
from kqlab.harness import (FAIL, PASS, SKIP, Report, ScenarioRegistry, ScenarioReport,
                           build_registry, run_all, run_scenario)
from kqlab.harness.lifting_scenarios import non_increasing
from kqlab.harness.report import REPORT_SCHEMA
from kqlab.harness.subdivision_scenarios import last_vertex_corpus, poset_chain_counts
from kqlab.core import boundary, horn


def passing(report, config):
    report.expect("one", 1, 1, "TRIVIAL")


def capped(report, config):
    report.expect("before the cap", True, True, "PAPER")
    raise ResourceCapExceeded("map enumeration", 10, {"source": "Δ^2"})


def broken(report, config):
    raise ExtensionFailure("no extension", {"n": 2, "i": 1})


def crashing(report, config):
    raise ValueError("boom")


@pytest.fixture
def registry():
    registry = ScenarioRegistry()
    for sid in ALL_SCENARIOS:
        registry.register(sid, passing, f"scenario {sid}")
    return registry


def test_registry_is_case_insensitive():
    registry = ScenarioRegistry()
    registry.register("s1", passing, "one")
    assert registry.exists("S1")
    assert registry.get("S1") == (passing, "one")
    assert registry.get("S2") is None
    assert registry.list_scenarios() == ["S1"]


def test_build_registry_has_every_scenario():
    assert sorted(build_registry().list_scenarios()) == sorted(ALL_SCENARIOS)


def test_run_scenario_outcomes():
    registry = ScenarioRegistry()
    registry.register("S1", passing)
    registry.register("S2", capped)
    registry.register("S3", broken)
    registry.register("S4", crashing)
    config = Config()

    assert run_scenario("S1", config, registry).verdict == PASS

    skipped = run_scenario("S2", config, registry)
    assert skipped.verdict == SKIP
    assert skipped.witnesses["cap"]["cap"] == 10

    failed = run_scenario("S3", config, registry)
    assert failed.verdict == FAIL
    assert failed.error["details"] == {"i": 1, "n": 2}

    crashed = run_scenario("S4", config, registry)
    assert crashed.verdict == FAIL
    assert crashed.error["message"].startswith("internal error")

    unknown = run_scenario("S99", config, registry)
    assert unknown.verdict == FAIL


def test_scenario_report_rules():
    report = ScenarioReport("S1", "demo")
    with pytest.raises(ValueError):
        report.expect("bad tag", 1, 1, "GUESS")
    assert report.verdict == PASS
    report.skip("capped", "too big")
    assert report.verdict == SKIP
    assert not report.expect("wrong", 1, 2, "DERIVED")
    assert report.verdict == FAIL
    doc = report.to_dict(timings=False)
    assert "elapsed" not in doc
    assert [e["status"] for e in doc["expectations"]] == [SKIP, FAIL]


def test_report_document():
    config = Config()
    report = Report(config.with_value("report_path", "out.json"))
    doc = report.to_dict()
    assert doc["schema"] == REPORT_SCHEMA
    assert doc["verdict"] == PASS
    assert "report_path" not in doc["config"]
    assert "orientation" in doc["conventions"]
    assert report.exit_code() == 0

    scenario = ScenarioReport("S1")
    scenario.skip("x", "cap")
    report.scenarios.append(scenario)
    assert report.exit_code() == 3
    scenario.fail("broken")
    assert report.exit_code() == 1


def test_run_all_with_nothing_enabled():
    report = run_all(Config().with_value("scenarios", ""))
    assert report.scenarios == []
    assert report.warnings
    assert report.verdict == PASS


def test_run_all_keeps_canonical_order(monkeypatch, registry):
    monkeypatch.setattr(harness, "build_registry", lambda: registry)
    config = Config().with_value("scenarios", "S10 S2 S9 S1").with_value("disable", "S9")
    report = run_all(config)
    assert [s.sid for s in report.scenarios] == ["S1", "S2", "S10"]
    assert report.verdict == PASS
    assert "S10" in report.render_text()


def test_beyond_range_banner(monkeypatch, registry):
    monkeypatch.setattr(harness, "build_registry", lambda: registry)
    report = run_all(Config().with_value("scenarios", "S1").with_value("horn_dim", "4"))
    assert report.to_dict()["beyond_validated_range"]
    assert report.render_text().startswith("***")


# ==================== Real scenarios ====================

def test_s8_passes_on_small_profile():
    report = run_scenario("S8", Config.for_profile("small"))
    assert report.verdict == PASS, report.to_dict()


def test_s1_interval_count():
    report = run_scenario("S1", Config.for_profile("small"))
    counts = {e["name"]: e["observed"] for e in report.to_dict()["expectations"]}
    assert counts["|maps(sd Δ^1, Δ^1)|"] == 5
    assert counts["|maps(sd ∂Δ^1, Δ^1)|"] == 4
    assert report.verdict != FAIL, report.to_dict()


def statuses(report):
    return {e["name"]: e["status"] for e in report.to_dict()["expectations"]}


def test_s7_gives_a_verdict_per_case():
    report = run_scenario("S7", Config.for_profile("small"))
    assert report.verdict != FAIL, report.to_dict()
    status = statuses(report)
    assert status["J_KQ fold Δ^0 ⊔ Δ^0 → Δ^0 second factor has the rlp"] == PASS
    assert status["J_KQ on a discrete source needs no rounds"] == PASS
    assert status["I_KQ ∅ → Δ^0 composite"] == PASS
    assert status["J_KQ Λ^2_1 → Δ^0 composite"] == PASS
    assert status["J_KQ Λ^2_1 → Δ^0 first factor is a homology equivalence"] == PASS
    assert status["J_KQ Λ^2_1 → Δ^0 fixed point"] == SKIP
    assert report.witnesses["J_KQ Λ^2_1 → Δ^0"]["stopped_by"] == "round_cap"


def test_s7_skips_a_capped_case_only():
    config = Config.for_profile("small").with_value("max_maps", "1")
    report = run_scenario("S7", config)
    assert report.verdict == SKIP, report.to_dict()
    assert "cap" not in report.witnesses
    assert any(key.endswith(" cap") for key in report.witnesses)


@pytest.mark.parametrize("profile", ["small", "default"])
def test_s9_passes(profile):
    report = run_scenario("S9", Config.for_profile(profile))
    assert report.verdict == PASS, report.to_dict()
    status = statuses(report)
    assert status["π0 probe diag! Δ^1 → const Δ^0"] == PASS
    assert not report.witnesses["probe diag! Δ^1 → const Δ^0"]["passed"]


def test_s4_reports_every_stage():
    report = run_scenario("S4", Config.for_profile("small"))
    assert report.verdict == PASS, report.to_dict()
    assert report.params["complexes"] == ["Δ^1", "Λ^2_1", "∂Δ^2"]
    for name in ("Δ^1", "Λ^2_1", "∂Δ^2"):
        assert f"kan Ex^1 {name}" in report.witnesses


def test_reports_are_deterministic():
    config = Config.for_profile("small")
    first = run_scenario("S8", config).to_dict(timings=False)
    second = run_scenario("S8", config).to_dict(timings=False)
    assert first == second


# ==================== Helpers ====================

def test_last_vertex_corpus():
    corpus = list(last_vertex_corpus(2))
    assert len(corpus) == 10
    assert corpus[-1].name == "Λ^2_2"


def test_poset_chain_counts():
    assert poset_chain_counts(boundary(2)) == [6, 6]
    assert poset_chain_counts(horn(2, 1)) == [5, 4]


def test_non_increasing():
    assert non_increasing({0: {"2,1": 3}, 1: {"2,1": 1}, 2: {"2,1": 1}})
    assert not non_increasing({0: {"2,1": 1}, 1: {"2,1": 2}})
