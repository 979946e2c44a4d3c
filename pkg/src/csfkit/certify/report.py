from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..esym import ESym, format_rational, is_e_positive

# Failure messages kept per step; the count is always exact.
MAX_RECORDED_FAILURES = 20


@dataclass
class Step:
    """One verified claim: how many instances were checked and which failed."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    info: dict[str, Any] = field(default_factory=dict)

    def check(self, ok: bool, what: Any = None) -> bool:
        self.checked += 1
        if not ok:
            self.fail(what)
        return ok

    def fail(self, what: Any) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(str(what))

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json_obj(self) -> dict:
        obj = {"name": self.name, "checked": self.checked, "failures": list(self.failures)}
        if self.failure_count > len(self.failures):
            obj["failure_count"] = self.failure_count
        if self.info:
            obj["info"] = self.info
        return obj


@dataclass
class CertificateReport:
    b: int
    target: str
    steps: list[Step] = field(default_factory=list)
    witness: tuple | None = None
    mutant: str | None = None

    def step(self, name: str) -> Step:
        s = Step(name)
        self.steps.append(s)
        return s

    def get(self, name: str) -> Step:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def verified(self) -> bool:
        return all(s.passed for s in self.steps) and self.witness is None

    def failed_steps(self) -> list[str]:
        return [s.name for s in self.steps if not s.passed]

    def final_positivity(self, expansion: ESym) -> None:
        """The blunt check: every e-coefficient of the target is nonnegative."""
        step = self.step("final-e-positive")
        ok, witness = is_e_positive(expansion)
        step.check(ok, witness)
        step.info["terms"] = len(expansion)
        if not ok:
            self.witness = witness

    def to_json_obj(self) -> dict:
        obj = {
            "b": self.b,
            "target": self.target,
            "verified": self.verified,
            "steps": [s.to_json_obj() for s in self.steps],
            "witness": None,
        }
        if self.witness is not None:
            lam, coeff = self.witness
            obj["witness"] = {"partition": list(lam), "coeff": format_rational(coeff)}
        if self.mutant is not None:
            obj["mutant"] = self.mutant
        return obj

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    def format_table(self) -> str:
        lines = [f"certificate {self.target} b={self.b}: {'verified' if self.verified else 'FAILED'}"]
        if self.mutant:
            lines[0] += f" (mutant: {self.mutant})"
        for s in self.steps:
            mark = "ok  " if s.passed else "FAIL"
            line = f"  [{mark}] {s.name:<28} checked={s.checked}"
            if not s.passed:
                line += f" failures={s.failure_count} first={s.failures[0]}"
            lines.append(line)
        if self.witness is not None:
            lam, coeff = self.witness
            lines.append(f"  witness: e[{','.join(map(str, lam))}] has coefficient {coeff}")
        return "\n".join(lines)
