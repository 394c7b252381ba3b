"""Deterministic check reports, rendered as text or JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..exactpoly import Polynomial, format_rational
from ..fpalgebra import AlgebraElement


def plain(value: Any) -> Any:
    """Convert exact values to JSON-safe data; rationals become 'p/q' strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (AlgebraElement, Polynomial)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


@dataclass
class Check:
    name: str
    passed: bool | None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "INFO"}[self.passed]


@dataclass
class Report:
    command: list[str]
    entry: str | None = None
    seed: int = 0
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    error: str | None = None

    def add(self, name: str, passed: bool | None, **details) -> Check:
        c = Check(name, passed, details)
        self.checks.append(c)
        return c

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "fail" if any(c.passed is False for c in self.checks) else "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.verdict]

    def to_dict(self) -> dict:
        out = {"command": self.command, "entry": self.entry, "seed": self.seed}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["checks"] = [
                {"name": c.name, "status": c.status, "details": plain(c.details)} for c in self.checks
            ]
        out["warnings"] = list(self.warnings)
        out["verdict"] = self.verdict
        return out

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2)
        lines = [f"command: {' '.join(self.command)}"]
        if self.entry:
            lines.append(f"entry: {self.entry}")
        lines.append(f"seed: {self.seed}")
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for c in self.checks:
            lines.append(f"[{c.status}] {c.name}")
            for k, v in plain(c.details).items():
                if isinstance(v, list):
                    lines.append(f"    {k}:")
                    lines.extend(f"      {item}" for item in v)
                else:
                    lines.append(f"    {k}: {v}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)
