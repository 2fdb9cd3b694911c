"""Canonical experiment reports shared by every verification suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class ExperimentReport:
    experiment: str
    seed: int | None = None
    cases: int = 0
    agreements: int = 0
    violations: list[dict] = field(default_factory=list)
    # deterministic counters only (node counts, oracle calls); no wall-clock
    stats: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def record(self, instance: str, ok: bool, expected=None, computed=None, artifacts=None) -> None:
        self.cases += 1
        if ok:
            self.agreements += 1
        else:
            self.violations.append({"instance": instance, "expected": expected,
                                    "computed": computed, "artifacts": artifacts or {}})

    def bump(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount

    def peak(self, key: str, value: int) -> None:
        self.stats[key] = max(self.stats.get(key, value), value)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def agreement_rate(self) -> float:
        return self.agreements / self.cases if self.cases else 1.0

    def to_dict(self) -> dict:
        assert self.agreements + len(self.violations) == self.cases
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "cases": self.cases,
            "agreements": self.agreements,
            "agreement_rate": round(self.agreement_rate, 6),
            "violations": sorted(self.violations, key=lambda v: str(v["instance"])),
            "stats": self.stats,
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
