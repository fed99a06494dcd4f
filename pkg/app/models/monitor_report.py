"""
Monitor Report Model

FLOW OVERVIEW
- CheckCounter: pass/violation counts for one named check plus the first
  counterexample seen.
- MonitorReport: ordered collection of CheckCounters.
  • record(check, ok, counterexample) → count one evaluation.
  • merge(other) → fold another fragment in (first counterexample wins, so
    merging fragments in edge order reproduces a sequential run).
  • violations / passed → report-level verdict.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional


@dataclass
class CheckCounter:
    passed: int = 0
    violations: int = 0
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {'passed': self.passed, 'violations': self.violations}
        if self.counterexample is not None:
            data['counterexample'] = self.counterexample
        return data


@dataclass
class MonitorReport:
    checks: Dict[str, CheckCounter] = field(default_factory=dict)

    def record(self, check: str, ok: bool,
               counterexample: Optional[Callable[[], Dict[str, Any]]] = None) -> bool:
        """Count one evaluation of `check`. The counterexample is built lazily."""
        counter = self.checks.setdefault(check, CheckCounter())
        if ok:
            counter.passed += 1
        else:
            counter.violations += 1
            if counter.counterexample is None and counterexample is not None:
                counter.counterexample = counterexample()
        return ok

    def merge(self, other: 'MonitorReport') -> 'MonitorReport':
        for name, theirs in other.checks.items():
            mine = self.checks.setdefault(name, CheckCounter())
            mine.passed += theirs.passed
            mine.violations += theirs.violations
            if mine.counterexample is None:
                mine.counterexample = theirs.counterexample
        return self

    @property
    def violations(self) -> int:
        return sum(counter.violations for counter in self.checks.values())

    @property
    def evaluations(self) -> int:
        return sum(counter.passed + counter.violations for counter in self.checks.values())

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def violated_checks(self):
        return [name for name, counter in self.checks.items() if counter.violations]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'violations': self.violations,
            'evaluations': self.evaluations,
            'checks': {name: self.checks[name].to_dict() for name in sorted(self.checks)}
        }
