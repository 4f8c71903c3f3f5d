"""Versioned JSON suite reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

SCHEMA = "springer-lab/v1"

PASS, FAIL, REPORT = "pass", "fail", "report"


@dataclass
class Check:
    name: str
    status: str  # pass | fail | report
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def check(name: str, ok: bool, **detail) -> Check:
    return Check(name, PASS if ok else FAIL, detail)


def finding(name: str, **detail) -> Check:
    """Report-only observation; never fails a run."""
    return Check(name, REPORT, detail)


@dataclass
class SuiteReport:
    suite: str
    anchor: str
    parameters: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def validate(self) -> "SuiteReport":
        names = [c.name for c in self.checks]
        if len(set(names)) != len(names):
            raise ValueError("duplicate check names in report")
        return self

    def to_json(self) -> dict:
        self.validate()
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "anchor": self.anchor,
            "parameters": self.parameters,
            "checks": [c.to_json() for c in self.checks],
            "passed": self.passed,
            # the only volatile field: wall-clock data
            "run_info": {
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "timings_s": {k: round(v, 3) for k, v in sorted(self.timings.items())},
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def summary_lines(self) -> list[str]:
        out = [f"[{self.suite}] {self.anchor}"]
        for c in self.checks:
            out.append(f"  {c.status.upper():6} {c.name}")
        out.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return out


class Timer:
    def __init__(self, report: SuiteReport, key: str):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.report.timings[self.key] = self.report.timings.get(self.key, 0.0) + time.perf_counter() - self.t0
        return False
