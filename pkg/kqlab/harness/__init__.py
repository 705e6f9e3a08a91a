"""
Scenario registry and runner.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

from ..config import Config
from ..errors import ExtensionFailure, KQError, ResourceCapExceeded
from .report import FAIL, PASS, SKIP, Expectation, Report, ScenarioReport

logger = logging.getLogger("kqlab")

Runner = Callable[[ScenarioReport, Config], None]


class ScenarioRegistry:
    """Registry for scenario runners."""

    def __init__(self):
        self._scenarios: Dict[str, Tuple[Runner, str]] = {}
        # scenario id -> (runner, title)

    def register(self, sid: str, runner: Runner, title: str = ""):
        self._scenarios[sid.upper()] = (runner, title)

    def get(self, sid: str) -> Optional[Tuple[Runner, str]]:
        return self._scenarios.get(sid.upper())

    def exists(self, sid: str) -> bool:
        return sid.upper() in self._scenarios

    def list_scenarios(self) -> List[str]:
        return list(self._scenarios.keys())


def build_registry() -> ScenarioRegistry:
    from .bisimplicial_scenarios import register_bisimplicial_scenarios
    from .lifting_scenarios import register_lifting_scenarios
    from .subdivision_scenarios import register_subdivision_scenarios

    registry = ScenarioRegistry()
    register_subdivision_scenarios(registry)
    register_lifting_scenarios(registry)
    register_bisimplicial_scenarios(registry)
    return registry


def run_scenario(sid: str, config: Config,
                 registry: Optional[ScenarioRegistry] = None) -> ScenarioReport:
    """Run one scenario; library errors become verdicts, never escape."""
    registry = registry or build_registry()
    entry = registry.get(sid)
    if entry is None:
        report = ScenarioReport(sid.upper())
        report.fail(f"unknown scenario '{sid}'")
        return report
    runner, title = entry
    report = ScenarioReport(sid.upper(), title)
    started = time.perf_counter()
    try:
        runner(report, config)
    except ResourceCapExceeded as e:
        report.skip("scenario", str(e), provenance="TRIVIAL")
        report.witnesses["cap"] = {"what": e.what, "cap": e.cap, "reached": e.reached}
    except ExtensionFailure as e:
        report.fail(str(e), e.diagnostics)
    except KQError as e:
        report.fail(f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.exception(f"{report.sid} raised")
        report.fail(f"internal error: {type(e).__name__}: {e}")
    report.elapsed = time.perf_counter() - started
    logger.info(f"{report.sid} {report.verdict} in {report.elapsed:.2f}s")
    return report


def _run_in_worker(sid: str, config: Config) -> ScenarioReport:
    return run_scenario(sid, config)


def run_all(config: Config) -> Report:
    """Run every enabled scenario; the report keeps canonical scenario order."""
    config.validate()
    report = Report(config)
    wanted = config.enabled_scenarios
    if not wanted:
        report.warnings.append("no scenarios enabled")
        logger.warning("no scenarios enabled; empty report")
        return report
    if config.beyond_validated_range:
        logger.warning("caps beyond the validated range")
    if config.workers > 1 and len(wanted) > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, len(wanted))) as pool:
            futures = [pool.submit(_run_in_worker, sid, config) for sid in wanted]
            report.scenarios = [f.result() for f in futures]
    else:
        registry = build_registry()
        report.scenarios = [run_scenario(sid, config, registry) for sid in wanted]
    logger.info(f"{len(report.scenarios)} scenarios: {report.verdict}")
    return report


__all__ = [
    "FAIL", "PASS", "SKIP", "Expectation", "Report", "ScenarioReport", "ScenarioRegistry",
    "build_registry", "run_all", "run_scenario",
]
