"""
Scenario reports and the "KQR v1" document.

Every expected value carries a provenance tag:
- PAPER:   a statement the construction guarantees
- DERIVED: a number computed independently by hand or by double enumeration
- TRIVIAL: forced by the definitions
- ORACLE:  cross-checked against an independent oracle
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..config import Config

logger = logging.getLogger("kqlab")

REPORT_SCHEMA = "KQR v1"

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL", "ORACLE")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_SKIP = 3

CONVENTIONS = {
    "orientation": "const M is constant horizontally; counit levels are taken at fixed vertical degree",
    "limits": "matching objects and pullbacks are strict limits, meaningful only for tame inputs",
    "oracle": "homology+pi0 is necessary, not sufficient, for a weak equivalence",
    "collapse": "a failed collapse search is inconclusive",
}


def plain(value: Any) -> Any:
    """Reduce a value to JSON types with deterministic ordering."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((plain(v) for v in value), key=str)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@dataclass
class Expectation:
    name: str
    expected: Any
    observed: Any
    provenance: str
    passed: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "expected": plain(self.expected),
                "observed": plain(self.observed), "provenance": self.provenance,
                "status": SKIP if self.passed is None else (PASS if self.passed else FAIL)}


@dataclass
class ScenarioReport:
    """One scenario's expectations, witnesses and notes."""

    sid: str
    title: str = ""
    params: Dict[str, Any] = field(default_factory=dict)
    expectations: List[Expectation] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    error: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0

    def expect(self, name: str, expected: Any, observed: Any, provenance: str,
               passed: Optional[bool] = None) -> bool:
        """Record an expectation; `passed` defaults to expected == observed."""
        if provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance tag '{provenance}'")
        ok = (expected == observed) if passed is None else passed
        self.expectations.append(Expectation(name, expected, observed, provenance, ok))
        if not ok:
            logger.info(f"{self.sid}: {name} expected {expected!r}, observed {observed!r}")
        return ok

    def skip(self, name: str, reason: str, provenance: str = "PAPER") -> None:
        """Record an expectation left unresolved by a resource cap."""
        self.expectations.append(Expectation(name, None, reason, provenance, None))
        logger.info(f"{self.sid}: {name} skipped ({reason})")

    def fail(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        self.error = {"message": message, "details": plain(details or {})}

    @property
    def verdict(self) -> str:
        if self.error is not None or any(e.passed is False for e in self.expectations):
            return FAIL
        if any(e.passed is None for e in self.expectations):
            return SKIP
        return PASS

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        doc = {
            "id": self.sid,
            "title": self.title,
            "verdict": self.verdict,
            "params": plain(self.params),
            "expectations": [e.to_dict() for e in self.expectations],
            "witnesses": plain(self.witnesses),
            "notes": list(self.notes),
        }
        if self.error is not None:
            doc["error"] = self.error
        if timings:
            doc["elapsed"] = round(self.elapsed, 3)
        return doc


@dataclass
class Report:
    config: Config
    scenarios: List[ScenarioReport] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        verdicts = {s.verdict for s in self.scenarios}
        if FAIL in verdicts:
            return FAIL
        if SKIP in verdicts:
            return SKIP
        return PASS

    def exit_code(self) -> int:
        return {PASS: EXIT_OK, FAIL: EXIT_FAIL, SKIP: EXIT_SKIP}[self.verdict]

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        settings = asdict(self.config)
        settings.pop("report_path", None)
        return {
            "schema": REPORT_SCHEMA,
            "verdict": self.verdict,
            "beyond_validated_range": self.config.beyond_validated_range,
            "config": plain(settings),
            "conventions": CONVENTIONS,
            "warnings": list(self.warnings),
            "scenarios": [s.to_dict(timings) for s in self.scenarios],
        }

    def render_text(self) -> str:
        lines = []
        if self.config.beyond_validated_range:
            lines.append("*** caps beyond the validated range ***")
        lines.append(f"profile {self.config.profile}: {self.verdict}")
        lines.extend(f"warning: {w}" for w in self.warnings)
        for scenario in self.scenarios:
            lines.append(f"{scenario.sid:<4} {scenario.verdict:<5} {scenario.title} "
                         f"({scenario.elapsed:.2f}s)")
            for e in scenario.expectations:
                if e.passed is not True:
                    status = SKIP if e.passed is None else FAIL
                    lines.append(f"     {status} {e.name}: expected {e.expected!r}, "
                                 f"observed {e.observed!r} [{e.provenance}]")
            if scenario.error is not None:
                lines.append(f"     error: {scenario.error['message']}")
        return "\n".join(lines)
