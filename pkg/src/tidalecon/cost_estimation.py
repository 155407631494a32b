"""Decompose published cost observations into fixed and per-turbine parts.

Two routes are supported: a two-point solve (total cost known at two array
sizes) and a ratio-based split (total cost known at one size plus the
fixed-to-turbine-dependent cost ratio). A learning-rate projection and a
least-squares ratio fit round out the toolkit.

Turbine counts may be fractional here: published figures are often per MW
for a given rated capacity, so counts like 100 MW / 1.5 MW = 66.7 arise
naturally. Integer counts are only required when building an ArrayDesign.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

RATIO_WINDOW = (2.3, 3.9)  # range supported by offshore-wind cost data


class CostBasis(Enum):
    TOTAL = "total"
    PER_MW = "per_mw"


class DataConsistencyWarning(UserWarning):
    """The observations imply a physically implausible cost component."""


class RatioWindowWarning(UserWarning):
    """Fixed-to-turbine cost ratio outside the empirically supported window."""


@dataclass(frozen=True)
class CostObservation:
    """A published cost figure for an array of a known size.

    ``cost`` is either the total in GBP m (basis TOTAL) or GBP m per MW
    (basis PER_MW, in which case ``capacity_mw`` is required).
    ``currency_rate`` converts to GBP (1.0 if already GBP).
    """

    n_t: float
    cost: float
    basis: CostBasis = CostBasis.TOTAL
    capacity_mw: float | None = None
    currency_rate: float = 1.0

    def __post_init__(self) -> None:
        if self.n_t <= 0:
            raise ValueError(f"n_t must be positive, got {self.n_t}")
        if self.cost < 0:
            raise ValueError(f"cost must be >= 0, got {self.cost}")
        if self.currency_rate <= 0:
            raise ValueError(f"currency_rate must be positive, got {self.currency_rate}")
        if self.basis is CostBasis.PER_MW and (
            self.capacity_mw is None or self.capacity_mw <= 0
        ):
            raise ValueError("per-MW observations need a positive capacity_mw")


@dataclass(frozen=True)
class FixedToTurbineRatio:
    """Ratio of the fixed cost component to the per-turbine component."""

    ratio: float

    def __post_init__(self) -> None:
        if self.ratio < 0:
            raise ValueError(f"ratio must be >= 0, got {self.ratio}")
        low, high = RATIO_WINDOW
        if not low <= self.ratio <= high:
            warnings.warn(
                f"ratio {self.ratio:g} outside the supported window [{low}, {high}]",
                RatioWindowWarning,
                stacklevel=2,
            )


class CostSplit(NamedTuple):
    fixed: float
    per_turbine: float


def normalize_observation(obs: CostObservation) -> float:
    """Total cost of the observed array in GBP m."""
    total = obs.cost
    if obs.basis is CostBasis.PER_MW:
        total *= obs.capacity_mw
    return total * obs.currency_rate


def split_two_points(obs1: CostObservation, obs2: CostObservation) -> CostSplit:
    """Fixed and per-turbine components from totals at two array sizes.

    The per-turbine component is the slope between the two points and the
    fixed component the intercept; either observation is reconstructed
    exactly by fixed + per_turbine * n_t. A negative fixed component is
    returned as-is with a data-consistency warning.
    """
    if obs1.n_t == obs2.n_t:
        raise ValueError(f"observations must have distinct n_t, both are {obs1.n_t}")
    total1 = normalize_observation(obs1)
    total2 = normalize_observation(obs2)
    per_turbine = (total2 - total1) / (obs2.n_t - obs1.n_t)
    fixed = total1 - per_turbine * obs1.n_t
    if fixed < 0:
        warnings.warn(
            f"two-point split gives a negative fixed component ({fixed:g} GBP m); "
            "the observations are mutually inconsistent",
            DataConsistencyWarning,
            stacklevel=2,
        )
    return CostSplit(fixed=fixed, per_turbine=per_turbine)


def split_from_ratio(obs: CostObservation, ratio: FixedToTurbineRatio) -> CostSplit:
    """Fixed and per-turbine components from one total plus the cost ratio."""
    denominator = ratio.ratio + obs.n_t
    if denominator == 0:
        raise ValueError("ratio + n_t must be non-zero")
    per_turbine = normalize_observation(obs) / denominator
    return CostSplit(fixed=ratio.ratio * per_turbine, per_turbine=per_turbine)


def learning_rate_adjust(
    cost: float,
    learning_rate: float,
    installed_from_mw: float,
    installed_to_mw: float,
) -> float:
    """Project a cost across a change in cumulative installed capacity.

    Standard experience-curve power law: each doubling of installed
    capacity multiplies the cost by (1 - learning_rate).
    """
    if installed_from_mw <= 0 or installed_to_mw <= 0:
        raise ValueError("installed capacities must be positive")
    if not 0 <= learning_rate < 1:
        raise ValueError(f"learning rate must be in [0, 1), got {learning_rate}")
    doublings = math.log2(installed_to_mw / installed_from_mw)
    return cost * (1.0 - learning_rate) ** doublings


def fit_higgins_ratio(
    normalized_points: Sequence[tuple[float, float]],
) -> FixedToTurbineRatio:
    """Least-squares fixed-to-turbine ratio from (n_t, total GBP m) points.

    Fits a line through the points; the ratio is intercept over slope.
    A non-positive slope means the data carry no per-turbine cost signal
    and is reported as an error.
    """
    if len(normalized_points) < 2:
        raise ValueError("need at least two points to fit a cost line")
    counts = np.array([n for n, _ in normalized_points], dtype=float)
    totals = np.array([t for _, t in normalized_points], dtype=float)
    if len(set(counts.tolist())) < 2:
        raise ValueError("need at least two distinct n_t values")
    slope, intercept = np.polyfit(counts, totals, 1)
    if slope <= 0:
        raise ValueError(f"fitted per-turbine cost is non-positive ({slope:g} GBP m)")
    return FixedToTurbineRatio(ratio=float(intercept / slope))
