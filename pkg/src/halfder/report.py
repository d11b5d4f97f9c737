"""Check results and their deterministic rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Check:
    """One verdict.  ``concordance`` names the statement being exercised."""

    name: str
    passed: bool
    concordance: str = ""
    instances: int = 0
    detail: str = ""
    criterion: int | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [status, self.name, f"instances={self.instances}"]
        if self.concordance:
            parts.append(self.concordance)
        if self.detail:
            parts.append(self.detail)
        return " | ".join(parts)


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    header: dict = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def render_text(self) -> str:
        lines = [f"# {self.title}"]
        for k, v in self.header.items():
            lines.append(f"# {k}: {v}")
        lines += [c.line() for c in self.checks]
        n = len(self.checks)
        lines.append(f"# summary: {n - len(self.failures)}/{n} passed")
        return "\n".join(lines) + "\n"

    def render_json(self) -> str:
        body = {
            "title": self.title,
            "header": self.header,
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.render_json() if fmt == "json" else self.render_text()


class Tally:
    """Counts instances and keeps the first failure witness."""

    def __init__(self):
        self.instances = 0
        self.witness = None

    def record(self, ok: bool, witness: str = "") -> bool:
        self.instances += 1
        if not ok and self.witness is None:
            self.witness = witness or "unnamed"
        return ok

    @property
    def ok(self) -> bool:
        return self.witness is None

    def check(self, name: str, concordance: str = "", criterion=None) -> Check:
        return Check(
            name,
            self.ok,
            concordance,
            self.instances,
            "" if self.ok else f"witness: {self.witness}",
            criterion,
        )
