"""Verification report shared by the checking suites."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Diagnosis:
    """Boolean check outcome carrying human-readable problems."""

    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class Report:
    """Outcome of one verification suite.

    ``checks`` holds (tuple, passed) entries when the suite is small enough
    to list them; large sweeps leave it empty and only count. An empty
    ``violations`` list is the pass condition.
    """

    suite: str
    parameters: dict[str, Any]
    tuples_checked: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    checks: list[tuple[dict[str, Any], bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, item: dict[str, Any], passed: bool, keep: bool = True) -> None:
        self.tuples_checked += 1
        if keep:
            self.checks.append((item, passed))
        if not passed:
            self.violations.append(item)

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)

    def to_json(self, include_checks: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.suite,
            "parameters": self.parameters,
            "tuples_checked": self.tuples_checked,
            "violations": self.violations,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if include_checks and self.checks:
            out["checks"] = [{"tuple": t, "ok": ok} for t, ok in self.checks]
        if self.notes:
            out["notes"] = self.notes
        if self.details:
            out["details"] = self.details
        out["elapsed_ms"] = self.elapsed_ms
        return out

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.violations)} violations)"
        return f"{self.suite}: {status}, {self.tuples_checked} tuples checked in {self.elapsed_ms:.0f} ms"
