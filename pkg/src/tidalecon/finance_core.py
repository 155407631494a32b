"""Time-value-of-money primitives: discount factors and present values.

All monetary amounts are carried in millions of pounds (GBP m). Cash flows
are indexed by whole project years, with year 0 the installation year.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping


class Compounding(Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class DiscountSpec:
    """Discounting convention: annual rate plus compounding mode.

    ``periods_per_year`` is only meaningful for discrete compounding
    (1 = annual, 4 = quarterly, ...). Defaults to annual discrete, which
    is sufficient for array design studies where the exact timing of
    costs within a year is not known.
    """

    annual_rate: float
    mode: Compounding = Compounding.DISCRETE
    periods_per_year: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.annual_rate) or self.annual_rate <= -1.0:
            raise ValueError(f"annual_rate must be finite and > -1, got {self.annual_rate}")
        if self.mode is Compounding.DISCRETE:
            if not isinstance(self.periods_per_year, int) or self.periods_per_year < 1:
                raise ValueError(
                    f"periods_per_year must be a positive integer, got {self.periods_per_year}"
                )


@dataclass(frozen=True)
class CashFlowSchedule:
    """Net cash flow per project year, in GBP m (positive = inflow).

    Years missing from ``flows`` are treated as zero flow. Every listed
    year must lie within [0, horizon].
    """

    horizon: int
    flows: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.horizon, int) or self.horizon < 0:
            raise ValueError(f"horizon must be a non-negative integer, got {self.horizon}")
        frozen = {}
        for year, amount in self.flows.items():
            if not isinstance(year, int) or not (0 <= year <= self.horizon):
                raise ValueError(f"flow year {year} outside [0, {self.horizon}]")
            if not math.isfinite(amount):
                raise ValueError(f"flow for year {year} is not finite: {amount}")
            frozen[year] = float(amount)
        object.__setattr__(self, "flows", frozen)

    def flow(self, year: int) -> float:
        """Net flow in a given year; zero for years not listed."""
        return self.flows.get(year, 0.0)


def discount_factor(spec: DiscountSpec, years: float) -> float:
    """Factor converting a flow ``years`` into the future to present value.

    ``years`` may be fractional (used for payback interpolation). Equals 1
    at year 0, and lies in (0, 1] for non-negative rates.
    """
    if years < 0:
        raise ValueError(f"cannot discount a flow at negative time {years}")
    if spec.mode is Compounding.CONTINUOUS:
        return math.exp(-spec.annual_rate * years)
    p = spec.periods_per_year
    return (1.0 + spec.annual_rate / p) ** (-p * years)


def present_value(schedule: CashFlowSchedule, spec: DiscountSpec) -> float:
    """Discounted sum of all flows in the schedule, in GBP m."""
    return sum(
        amount * discount_factor(spec, year) for year, amount in sorted(schedule.flows.items())
    )
