"""Structured results of verification runs and their stable text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int = 0
    counterexample: dict[str, Any] | None = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "status": "pass" if self.passed else "fail",
                               "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerifyReport:
    properties: list[PropertyResult] = field(default_factory=list)
    seed: int | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(p.passed for p in self.properties)

    def add(self, prop: PropertyResult) -> PropertyResult:
        self.properties.append(prop)
        return prop

    def extend(self, other: VerifyReport) -> None:
        self.properties.extend(other.properties)

    def __getitem__(self, name: str) -> PropertyResult:
        for p in self.properties:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "params": self.params,
            "allPass": self.all_pass,
            "properties": [p.to_json() for p in self.properties],
        }


def format_report(r: VerifyReport) -> str:
    """One header line, then one line per property ending in ``pass`` or ``FAIL``.

    Counterexample payloads and notes of failing properties follow their
    property line, indented; payloads are sorted JSON.
    """
    params = " ".join(f"{k}={r.params[k]}" for k in sorted(r.params))
    lines = [f"# verify seed={r.seed} {params}".rstrip()]
    width = max((len(p.name) for p in r.properties), default=0)
    for p in r.properties:
        lines.append(f"{p.name.ljust(width)}  checked={p.checked:<6d} {'pass' if p.passed else 'FAIL'}")
        if p.counterexample is not None:
            lines.append("    counterexample: " + json.dumps(p.counterexample, sort_keys=True))
        if p.note and not p.passed:
            lines.append("    note: " + p.note)
    return "\n".join(lines) + "\n"
