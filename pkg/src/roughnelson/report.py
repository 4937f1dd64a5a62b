"""Findings reports: every check in the package returns one of these."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Finding:
    name: str
    formula: str
    witness: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "formula": self.formula, "witness": dict(self.witness)}


@dataclass
class Report:
    """A named list of violated properties.

    ``checked`` counts the properties examined, so an empty report can be
    told apart from one that never ran.
    """

    subject: str
    findings: list[Finding] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    def fail(self, name: str, formula: str, **witness: Any) -> None:
        self.findings.append(Finding(name, formula, witness))

    def check(self, name: str) -> None:
        if name not in self.checked:
            self.checked.append(name)

    def merge(self, other: Report, prefix: str | None = None) -> Report:
        for f in other.findings:
            self.findings.append(Finding(f"{prefix}/{f.name}" if prefix else f.name, f.formula, f.witness))
        for c in other.checked:
            self.check(f"{prefix}/{c}" if prefix else c)
        return self

    def failed(self, name: str) -> bool:
        return any(f.name == name for f in self.findings)

    def to_json(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checked": list(self.checked),
            "findings": [f.to_json() for f in self.findings],
            "info": dict(self.info),
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok ({len(self.checked)} checks)"
        lines = [f"{self.subject}: {len(self.findings)} finding(s)"]
        lines += [f"  {f.name}: {f.formula} {f.witness}" for f in self.findings]
        return "\n".join(lines)
