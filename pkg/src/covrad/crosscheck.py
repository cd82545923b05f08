"""Compare certified lower bounds with the exact multicovering radius of a code."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from covrad.bounds import BoundReport, code_bounds
from covrad.codefile import point_to_json
from covrad.radius import DEFAULT_BUDGET, RadiusResult, multicovering_radius


@dataclass
class CrossCheck:
    exact: RadiusResult
    reports: list[BoundReport]

    @property
    def sound(self) -> bool:
        """No satisfied certificate claims more than the exact radius."""
        return all(r.implied_bound <= self.exact.radius for r in self.reports if r.satisfied)

    @property
    def best_certified(self) -> int:
        return max((r.implied_bound for r in self.reports if r.satisfied), default=0)

    def to_dict(self) -> dict:
        return {
            "m": self.exact.m,
            "exact_radius": self.exact.radius,
            "witness": [point_to_json(p) for p in self.exact.witness],
            "best_certified_lower_bound": self.best_certified,
            "all_certificates_sound": self.sound,
            "reports": [r.to_dict() for r in self.reports],
        }


def cross_check(code, m: int, families: Sequence[str] | None = None, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CrossCheck:
    exact = multicovering_radius(code, m=m, budget=budget, workers=workers)
    reports = code_bounds(code, m).reports
    if families:
        reports = [r for r in reports if r.family in families]
    return CrossCheck(exact, reports)
