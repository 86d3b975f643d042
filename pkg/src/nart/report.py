"""Verification reports and their JSON / table rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, UNVERIFIABLE = "pass", "fail", "unverifiable"
EXIT_CODES = {PASS: 0, FAIL: 1, UNVERIFIABLE: 2}


def _plain(x):
    """Coerce numpy scalars and tuples into JSON-native values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "tolist") and not isinstance(x, (str, bytes)):
        return x.tolist()
    return x


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "witness": _plain(self.witness)}


@dataclass
class Report:
    title: str = ""
    verdict: str = PASS
    basis_order: list[str] = field(default_factory=list)
    relation_matrix: list[list[int]] = field(default_factory=list)
    invariant_factors: list[int] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness=None) -> bool:
        self.checks.append(Check(name, bool(passed), witness))
        return bool(passed)

    def finalize(self) -> Report:
        if self.verdict != UNVERIFIABLE:
            self.verdict = PASS if all(c.passed for c in self.checks) else FAIL
        return self

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "basis_order": list(self.basis_order),
            "relation_matrix": _plain(self.relation_matrix),
            "invariant_factors": _plain(self.invariant_factors),
            "checks": [c.to_json() for c in self.checks],
        }
        if self.title:
            out["title"] = self.title
        if self.extra:
            out["extra"] = _plain(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, data: dict) -> Report:
        return cls(
            title=data.get("title", ""),
            verdict=data["verdict"],
            basis_order=list(data.get("basis_order", [])),
            relation_matrix=[list(r) for r in data.get("relation_matrix", [])],
            invariant_factors=list(data.get("invariant_factors", [])),
            checks=[Check(c["name"], c["pass"], c.get("witness")) for c in data.get("checks", [])],
            extra=data.get("extra", {}),
        )

    def table(self) -> str:
        lines = []
        if self.title:
            lines.append(self.title)
        lines.append(f"verdict: {self.verdict}")
        if self.basis_order:
            lines.append("basis: " + ", ".join(self.basis_order))
        if self.relation_matrix:
            lines.append("relations:")
            lines.extend("  " + " ".join(f"{v:>3}" for v in row) for row in self.relation_matrix)
        if self.invariant_factors:
            lines.append("invariant factors: " + " ".join(map(str, self.invariant_factors)))
        for k, v in self.extra.items():
            lines.append(f"{k}: {json.dumps(_plain(v))}")
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            wit = "" if c.witness is None else f"  {json.dumps(_plain(c.witness))}"
            lines.append(f"  [{mark}] {c.name:<{width}}{wit}")
        return "\n".join(lines)

