"""Structured results of the verification routines."""

from dataclasses import dataclass, field
from fractions import Fraction


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_dict(self):
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.detail is not None:
            out["detail"] = _jsonable(self.detail)
        return out


@dataclass
class Report:
    """An ordered list of checks plus free-form facts (signs, group names, ...)."""

    title: str
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def add(self, name, passed, detail=None):
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "facts": _jsonable(self.facts),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self):
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for k, v in self.facts.items():
            lines.append(f"  {k}: {_jsonable(v)}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail is not None and not c.passed:
                line += f"  ({_jsonable(c.detail)})"
            lines.append(line)
        return "\n".join(lines)
