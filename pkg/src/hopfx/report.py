"""Pass/fail reports shared by every validator."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    holds: bool
    witness: tuple | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.holds:
            self.witness = None
        elif self.witness is None:
            self.witness = ()

    def to_json(self, timings: bool = True) -> dict:
        out = {"check": self.name, "holds": self.holds}
        if not self.holds:
            out["witness"] = _jsonable(self.witness)
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _jsonable(w):
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    if isinstance(w, (int, str, bool)) or w is None:
        return w
    return str(w)


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, witness=None, holds: bool | None = None, elapsed: float = 0.0) -> Check:
        """Record a check; it holds iff ``witness`` is None unless ``holds`` is given."""
        if holds is None:
            holds = witness is None
        c = Check(name, holds, witness, elapsed)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self, name: str):
        """``with report.timed("x") as slot: slot.witness = ...``"""
        slot = _Slot()
        t0 = time.perf_counter()
        yield slot
        self.add(name, slot.witness, slot.holds, time.perf_counter() - t0)

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.holds, c.witness, c.elapsed))

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_json(self, timings: bool = False) -> str:
        return json.dumps([c.to_json(timings) for c in self.checks], indent=2)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.holds else "FAIL"
            extra = "" if c.holds else f"  witness={_jsonable(c.witness)}"
            lines.append(f"{mark}  {c.name}{extra}")
        return "\n".join(lines)


class _Slot:
    def __init__(self):
        self.witness = None
        self.holds = None
