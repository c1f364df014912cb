"""Case counting and reports for exhaustive lemma replays."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .complexes import BudgetExceeded

MAX_STORED_FAILURES = 25


class UnknownLemma(KeyError):
    pass


class Budget(BudgetExceeded):
    """A replay would build a complex larger than the cell budget."""


def _plain(x: Any) -> Any:
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, float):
        return str(x) if x in (float("inf"), float("-inf")) else x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_plain(v) for v in x]
    return str(x)


@dataclass
class LemmaReport:
    lemma: str
    params: dict
    cases: int
    failures: list
    failure_count: int
    millis: float
    notes: list = field(default_factory=list)
    description: str = ""
    known_failure: bool = False

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": _plain(self.params),
            "cases": self.cases,
            "failures": _plain(self.failures),
            "failure_count": self.failure_count,
            "millis": round(self.millis, 1),
            "passed": self.passed,
            "known_failure": self.known_failure,
            "notes": _plain(self.notes),
        }

    def summary(self) -> str:
        verdict = "pass" if self.passed else ("FAIL (known)" if self.known_failure else "FAIL")
        return f"{self.lemma:<34} {verdict:<13} cases={self.cases:<8} failures={self.failure_count:<5} {self.millis / 1000:7.2f}s"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


class Ctx:
    """Collects case outcomes for one replay."""

    def __init__(self, budget_cells: int | None = None):
        self.cases = 0
        self.failure_count = 0
        self.failures: list = []
        self.notes: list = []
        self.budget_cells = budget_cells

    def check(self, ok: bool, payload: Any = None) -> bool:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_STORED_FAILURES:
                self.failures.append(_plain(payload))
        return bool(ok)

    def expect_empty(self, errors: list, label: Any) -> bool:
        """One case that passes iff ``errors`` is empty."""
        return self.check(not errors, {"case": _plain(label), "errors": [str(e) for e in errors[:3]]})

    def note(self, text: Any) -> None:
        self.notes.append(_plain(text))

    def guard(self, size: int, what: str = "") -> None:
        if self.budget_cells is not None and size > self.budget_cells:
            raise Budget(f"{what or 'complex'} has {size} cells, budget is {self.budget_cells}")
