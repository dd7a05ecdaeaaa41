"""Check records and verification reports shared by all suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

VALIDITY = ("exact", "mod-c'8", "mod-torsion", "both-delta-values")


@dataclass
class Check:
    id: str
    anchor: str
    statement: str
    passed: bool
    validity: str = "exact"
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.validity not in VALIDITY:
            raise ValueError(f"unknown validity label {self.validity!r}")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "statement": self.statement,
            "verdict": self.verdict,
            "validity": self.validity,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, id: str, anchor: str, statement: str, passed: bool, validity: str = "exact", **witness) -> Check:
        c = Check(id, anchor, statement, bool(passed), validity, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            if prefix:
                c = Check(prefix + c.id, c.anchor, c.statement, c.passed, c.validity, c.witness)
            self.checks.append(c)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> dict:
        n = len(self.checks)
        bad = len(self.failures())
        return {"total": n, "passed": n - bad, "failed": bad}

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary(),
            "wall_time": round(self.wall_time, 6),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"== {self.suite} =="]
        for c in self.checks:
            lines.append(f"  [{c.verdict.upper():4}] {c.id:<48} ({c.validity}) {c.statement}")
        s = self.summary()
        lines.append(f"  {s['passed']}/{s['total']} passed in {self.wall_time:.2f}s")
        return "\n".join(lines)
