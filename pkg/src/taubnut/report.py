"""Check records and suite reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__

PASS = "pass"
FAIL = "fail"
MISMATCH = "mismatch-reported"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["suite", "engine_version", "seed", "checks"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "engine_version": {"type": "string"},
        "seed": {"type": "integer"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "paper_anchor", "status", "residual", "ms"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "paper_anchor": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, MISMATCH]},
                    "residual": {"type": "string"},
                    "ms": {"type": ["integer", "null"]},
                },
            },
        },
    },
}


@dataclass
class Check:
    id: str
    paper_anchor: str
    status: str
    residual: str
    ms: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class Report:
    suite: str
    seed: int = 0
    checks: list[Check] = field(default_factory=list)
    engine_version: str = __version__

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        """True when no check failed; itemized mismatches do not fail a suite."""
        return all(c.ok for c in self.checks)

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def ids(self) -> list[str]:
        return [c.id for c in self.checks]

    def to_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        return {
            "suite": self.suite,
            "engine_version": self.engine_version,
            "seed": self.seed,
            "checks": [asdict(c) for c in checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

