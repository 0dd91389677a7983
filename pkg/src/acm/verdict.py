"""Cohen-Macaulayness verdicts with rule traces.

A verdict records what was decided (CM / notCM / unknown), how firmly
(a cited structural theorem, a certified computation, or a single-prime
probable computation), and the ordered trace of rules that led there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

STATUSES = ("CM", "notCM", "unknown")
CERTAINTIES = ("theorem-cited", "computed-certified", "computed-probable", "none")


@dataclass
class Rule:
    """One applied rule: a stable id plus the mathematical fact it invokes."""

    id: str
    citation: str
    note: str = ""

    def to_json(self) -> dict:
        d = {"id": self.id, "citation": self.citation}
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Rule":
        return cls(d["id"], d["citation"], d.get("note", ""))


@dataclass
class Verdict:
    target: str
    status: str
    certainty: str
    rules: list = field(default_factory=list)
    certificate: dict | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.certainty not in CERTAINTIES:
            raise ValueError(f"bad certainty {self.certainty!r}")
        if self.certainty == "theorem-cited" and not self.rules:
            raise ValueError("theorem-cited verdict requires at least one rule")

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "status": self.status,
            "certainty": self.certainty,
            "rules": [r.to_json() for r in self.rules],
            "certificate": self.certificate,
            "details": self.details,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Verdict":
        return cls(
            d["target"],
            d["status"],
            d["certainty"],
            [Rule.from_json(r) for r in d.get("rules", [])],
            d.get("certificate"),
            d.get("details", {}),
        )
