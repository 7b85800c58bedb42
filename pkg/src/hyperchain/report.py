"""Check records and verification reports with deterministic JSON output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
EXPECTED_FAIL = "expected-fail"  # a published equality that is false; witness attached
INFO = "info"  # exploratory finding, asserts nothing

STATUSES = (PASS, FAIL, SKIPPED, EXPECTED_FAIL, INFO)


@dataclass
class CheckRecord:
    id: str
    status: str
    witnesses: list[Any] = field(default_factory=list)
    detail: dict[str, Any] = field(default_factory=dict)
    seconds: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status in (FAIL, EXPECTED_FAIL) and not self.witnesses:
            raise ValueError(f"check {self.id!r} failed without a witness")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "status": self.status}
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.detail:
            out["detail"] = self.detail
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def check(id: str, ok: bool, witnesses=None, **detail) -> CheckRecord:
    """PASS/FAIL record; ``witnesses`` are kept only on failure."""
    return CheckRecord(id, PASS if ok else FAIL, list(witnesses or []) if not ok else [], detail)


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)
    header: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def add(self, *records: CheckRecord) -> None:
        self.checks.extend(records)

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckRecord(prefix + c.id, c.status, c.witnesses, c.detail, c.seconds))

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == FAIL]

    def get(self, id: str) -> CheckRecord:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return {k: v for k, v in out.items() if v}

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "status": self.status,
            "header": self.header,
            "counts": self.counts(),
            "checks": [c.to_dict(timings) for c in self.checks],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=False) + "\n"
