"""Verification reports and their text formats.

Reports merge associatively: counts add, violation lists are unioned, sorted
by serialization and truncated to the first ``VIOLATION_CAP`` entries, and
per-size witnesses keep the smaller value (adding minimiser counts on ties).
Merging shard reports in any grouping therefore gives the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from functools import reduce
from typing import Iterable

from .config import VIOLATION_CAP

CSV_FIELDS = [
    "statement", "n", "mode", "instances", "violations", "complete", "passed", "seed",
]


@dataclass(frozen=True)
class VerificationReport:
    statement: str
    n: int | None
    mode: str
    instances: int = 0
    violation_count: int = 0
    violations: tuple[str, ...] = ()
    # size -> (least value seen, number of instances attaining it)
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict)
    notes: dict[str, int] = field(default_factory=dict)
    seed: int | None = None
    complete: bool = True

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def merge(self, other: VerificationReport) -> VerificationReport:
        if (self.statement, self.n, self.mode, self.seed) != (
            other.statement, other.n, other.mode, other.seed,
        ):
            raise ValueError("cannot merge reports of different runs")
        witnesses = dict(self.witnesses)
        for size, (value, count) in other.witnesses.items():
            if size not in witnesses or value < witnesses[size][0]:
                witnesses[size] = (value, count)
            elif value == witnesses[size][0]:
                witnesses[size] = (value, witnesses[size][1] + count)
        notes = dict(self.notes)
        for key, value in other.notes.items():
            notes[key] = notes.get(key, 0) + value
        return replace(
            self,
            instances=self.instances + other.instances,
            violation_count=self.violation_count + other.violation_count,
            violations=tuple(sorted(set(self.violations) | set(other.violations))[:VIOLATION_CAP]),
            witnesses=dict(sorted(witnesses.items())),
            notes=dict(sorted(notes.items())),
            complete=self.complete and other.complete,
        )

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "n": self.n,
            "mode": self.mode,
            "seed": self.seed,
            "instances": self.instances,
            "violation_count": self.violation_count,
            "violations": list(self.violations),
            "witnesses": [[size, value, count] for size, (value, count) in sorted(self.witnesses.items())],
            "notes": dict(sorted(self.notes.items())),
            "complete": self.complete,
            "passed": self.passed,
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, text: str) -> VerificationReport:
        raw = json.loads(text)
        return cls(
            statement=raw["statement"],
            n=raw["n"],
            mode=raw["mode"],
            seed=raw["seed"],
            instances=raw["instances"],
            violation_count=raw["violation_count"],
            violations=tuple(raw["violations"]),
            witnesses={size: (value, count) for size, value, count in raw["witnesses"]},
            notes=raw["notes"],
            complete=raw["complete"],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        writer.writerow([
            self.statement, "" if self.n is None else self.n, self.mode, self.instances,
            self.violation_count, str(self.complete).lower(), str(self.passed).lower(),
            "" if self.seed is None else self.seed,
        ])
        return buf.getvalue()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extent = "" if self.complete else " (incomplete)"
        where = "" if self.n is None else f" n={self.n}"
        return (
            f"{status} {self.statement}{where} {self.mode}: "
            f"{self.instances} instances, {self.violation_count} violations{extent}"
        )


def merge_all(reports: Iterable[VerificationReport]) -> VerificationReport:
    return reduce(VerificationReport.merge, reports)
