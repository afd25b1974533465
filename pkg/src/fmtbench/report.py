"""Experiment reports: a list of checks with expected and observed values."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path


@dataclass
class Check:
    description: str
    expected: object
    observed: object
    passed: bool


@dataclass
class ExperimentReport:
    name: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    budget_usage: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, description: str, expected, observed) -> bool:
        ok = expected == observed
        self.checks.append(Check(description, expected, observed, ok))
        return ok

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "wall_time": round(self.wall_time, 3),
            "budget_usage": self.budget_usage,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(
            d["name"],
            dict(d["params"]),
            [Check(**c) for c in d["checks"]],
            d.get("wall_time", 0.0),
            dict(d.get("budget_usage", {})),
            list(d.get("notes", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls.from_dict(json.loads(text))

    def text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"experiment {self.name} ({params})"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.description}: expected {c.expected}, observed {c.observed}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        if self.budget_usage:
            lines.append("  budget: " + ", ".join(f"{k}={v}" for k, v in self.budget_usage.items()))
        lines.append(f"  wall time {self.wall_time:.2f}s")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)

    def write(self, path) -> None:
        """Write JSON to ``path`` and the text rendering next to it (``.txt``)."""
        path = Path(path)
        path.write_text(self.to_json() + "\n")
        path.with_suffix(".txt").write_text(self.text() + "\n")
