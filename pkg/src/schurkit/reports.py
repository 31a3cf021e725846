"""Shared report containers: hypothesis censuses and check entries.

Verification operations never raise on a violated *hypothesis*; they record
it here so batch sweeps can census failures. Only malformed inputs raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class HypothesisCheck:
    """One censused precondition: its worst slack and where it occurs.

    ``worst_slack`` is signed so that >= 0 means satisfied; ``location`` is
    the arc-length (or jump index) of the worst offender, None when the check
    is global or vacuous.
    """

    name: str
    passed: bool
    worst_slack: float | None = None
    location: float | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "worst_slack": _json_float(self.worst_slack),
            "location": _json_float(self.location),
            "note": self.note,
        }


@dataclass
class Census:
    checks: list[HypothesisCheck] = field(default_factory=list)

    def add(self, name: str, passed: bool, worst_slack=None, location=None, note="") -> None:
        self.checks.append(
            HypothesisCheck(name, bool(passed), worst_slack, location, note)
        )

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def get(self, name: str) -> HypothesisCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_list(self) -> list[dict]:
        return [c.to_dict() for c in self.checks]


def _json_float(x) -> float | None:
    """Coerce to a JSON-safe float (finite) or None."""
    if x is None:
        return None
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return None
    return x
