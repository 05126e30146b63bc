"""Machine-readable verification reports.

A report is rendered as JSON lines: one ``check`` record per check followed
by a ``summary`` record.  Keys are sorted and no timing data is included, so
identical inputs give byte-identical output; wall time is kept on the object
and printed separately by the CLI.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    inputs: str = ""

    def record(self) -> dict:
        return {
            "record": "check",
            "name": self.name,
            "inputs": self.inputs,
            "value": _json_float(self.value),
            "tolerance": _json_float(self.tolerance),
            "passed": self.passed,
        }


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, value: float, tolerance: float, inputs: str = "", passed: bool | None = None) -> Check:
        """Record a check; by default it passes iff value <= tolerance."""
        if passed is None:
            passed = bool(value <= tolerance)
        check = Check(name, float(value), float(tolerance), bool(passed), inputs)
        self.checks.append(check)
        return check

    def finish(self) -> Report:
        self.wall_time = time.perf_counter() - self._started
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [json.dumps(c.record(), sort_keys=True) for c in self.checks]
        summary = {
            "record": "summary",
            "suite": self.suite,
            "params": self.params,
            "checks": len(self.checks),
            "failed": sum(not c.passed for c in self.checks),
            "passed": self.passed,
        }
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"


def _json_float(value: float):
    # JSON has no inf/nan
    return value if math.isfinite(value) else repr(value)
