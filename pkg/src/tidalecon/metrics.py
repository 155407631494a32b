"""Economic metrics for array evaluation: NPV, LCOE, payback, IRR and
break-even-power functionals.

LCOE, payback period and IRR are all break-even rearrangements of the NPV
formula: they give the tariff, lifetime and discount rate respectively at
which the project exactly breaks even.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

from .cost_model import (
    ArrayDesign,
    CostParameters,
    TariffScheme,
    build_schedule,
    capex,
    energy_year,
    opex_year,
)
from .finance_core import CashFlowSchedule, DiscountSpec, discount_factor, present_value

IRR_NPV_TOLERANCE = 1e-6  # GBP m
IRR_BRACKET = (-0.99, 10.0)
_SECANT_SEEDS = (0.05, 0.15)  # spans the recommended discount-rate range
_MAX_ITERATIONS = 200


class NoPaybackError(ValueError):
    """Cumulative discounted cash flow never reaches zero within the horizon."""


class IrrUndefinedError(ValueError):
    """The flow sequence has no sign change, so no IRR exists."""


class NoIrrInRangeError(ValueError):
    """NPV has no root inside the search bracket."""


class AmbiguousIrrWarning(UserWarning):
    """Multiple NPV roots exist; the smallest bracketed root was returned."""


class ValidityWindowWarning(UserWarning):
    """An input lies outside the range the model was calibrated for."""


@dataclass(frozen=True)
class BreakEvenSpec:
    """Break-even power per device plus an economies-of-volume coefficient.

    ``ev_mw_per_turbine`` linearly reduces the break-even power as turbines
    are added; it must stay well below ``p_be_mw`` over the turbine counts
    evaluated for the quadratic correction to be meaningful.
    """

    p_be_mw: float
    ev_mw_per_turbine: float = 0.0

    def __post_init__(self) -> None:
        if self.p_be_mw <= 0:
            raise ValueError(f"break-even power must be positive, got {self.p_be_mw}")
        if self.ev_mw_per_turbine < 0:
            raise ValueError(
                f"economies-of-volume coefficient must be >= 0, got {self.ev_mw_per_turbine}"
            )


def npv(schedule: CashFlowSchedule, spec: DiscountSpec) -> float:
    """Net present value of the schedule, GBP m."""
    return present_value(schedule, spec)


def lcoe(design: ArrayDesign, params: CostParameters, spec: DiscountSpec) -> float:
    """Levelised cost of energy, GBP per MWh.

    Discounted lifetime cost (CAPEX at year 0, OPEX over years 1..L)
    divided by discounted lifetime net energy. This is the tariff at which
    the project NPV is exactly zero.
    """
    discounted_cost = capex(params, design.n_t)
    discounted_energy = 0.0
    annual_opex = opex_year(params, design.n_t)
    for year in range(1, design.lifetime_years + 1):
        factor = discount_factor(spec, year)
        discounted_cost += annual_opex * factor
        discounted_energy += energy_year(design, year) * factor
    if discounted_energy <= 0:
        raise ValueError("discounted energy is zero; LCOE is undefined")
    return discounted_cost * 1e6 / discounted_energy


def payback_period(schedule: CashFlowSchedule, spec: DiscountSpec) -> float:
    """First (fractional) year at which cumulative discounted flow reaches zero.

    Returns an exact integer when the cumulative NPV hits zero on a year
    boundary; interpolates linearly within the break-even year otherwise.
    """
    cumulative = schedule.flow(0) * discount_factor(spec, 0)
    if cumulative >= 0:
        return 0.0
    for year in range(1, schedule.horizon + 1):
        previous = cumulative
        cumulative += schedule.flow(year) * discount_factor(spec, year)
        if cumulative >= 0:
            if cumulative == 0:
                return float(year)
            return (year - 1) + previous / (previous - cumulative)
    raise NoPaybackError(
        f"cumulative discounted flow stays negative through year {schedule.horizon}"
    )


def _npv_at_rate(schedule: CashFlowSchedule, rate: float) -> float:
    return present_value(schedule, DiscountSpec(annual_rate=rate))


def _bisect(schedule: CashFlowSchedule, low: float, high: float, tol: float = 1e-12) -> float:
    f_low = _npv_at_rate(schedule, low)
    for _ in range(200):
        mid = 0.5 * (low + high)
        f_mid = _npv_at_rate(schedule, mid)
        if abs(f_mid) < tol or (high - low) < 1e-15:
            return mid
        if (f_mid > 0) == (f_low > 0):
            low, f_low = mid, f_mid
        else:
            high = mid
    return 0.5 * (low + high)


def _scan_brackets(schedule: CashFlowSchedule) -> list[tuple[float, float]]:
    # Sample uniformly in log(1 + r) so the steep region near r = -1 is
    # resolved as finely as the long tail toward r = 10.
    low, high = IRR_BRACKET
    n = 2000
    grid = [math.expm1(math.log1p(low) + k * (math.log1p(high) - math.log1p(low)) / n)
            for k in range(n + 1)]
    brackets = []
    f_prev = _npv_at_rate(schedule, grid[0])
    for r_prev, r_next in zip(grid, grid[1:]):
        f_next = _npv_at_rate(schedule, r_next)
        if f_prev == 0.0:
            brackets.append((r_prev, r_prev))
        elif (f_prev > 0) != (f_next > 0):
            brackets.append((r_prev, r_next))
        f_prev = f_next
    return brackets


def irr(schedule: CashFlowSchedule) -> float:
    """Internal rate of return: the discount rate at which NPV is zero.

    Secant iteration seeded inside the usual tidal discount-rate range,
    with a bisection fallback on the bracket [-0.99, 10]. If several roots
    exist the smallest bracketed one is returned and an
    ``AmbiguousIrrWarning`` is emitted.
    """
    amounts = [schedule.flow(i) for i in range(schedule.horizon + 1)]
    signs = [a > 0 for a in amounts if a != 0]
    if not signs or all(signs) or not any(signs):
        raise IrrUndefinedError("IRR undefined: cash flows never change sign")

    brackets = _scan_brackets(schedule)
    if not brackets:
        raise NoIrrInRangeError(
            f"no IRR in range [{IRR_BRACKET[0]}, {IRR_BRACKET[1]}]"
        )
    if len(brackets) > 1:
        warnings.warn(
            f"{len(brackets)} NPV roots bracketed; returning the smallest",
            AmbiguousIrrWarning,
            stacklevel=2,
        )
        return _bisect(schedule, *brackets[0])

    low, high = brackets[0]
    r_prev, r_curr = _SECANT_SEEDS
    f_prev = _npv_at_rate(schedule, r_prev)
    f_curr = _npv_at_rate(schedule, r_curr)
    for _ in range(_MAX_ITERATIONS):
        if abs(f_curr) < IRR_NPV_TOLERANCE:
            if IRR_BRACKET[0] <= r_curr <= IRR_BRACKET[1]:
                return r_curr
            break
        if f_curr == f_prev:
            break
        r_next = r_curr - f_curr * (r_curr - r_prev) / (f_curr - f_prev)
        if not math.isfinite(r_next) or r_next <= -1.0 or r_next > IRR_BRACKET[1]:
            break
        r_prev, f_prev = r_curr, f_curr
        r_curr, f_curr = r_next, _npv_at_rate(schedule, r_next)
    return _bisect(schedule, low, high)


def break_even_power(
    per_turbine_expenditures: Sequence[float],
    hours: Sequence[float],
    tariff_gbp_per_mwh: float,
) -> float:
    """Average power per device needed to cover per-turbine expenditure, MW.

    ``per_turbine_expenditures`` is the per-turbine spend in GBP for each
    year 0..L; ``hours`` the generating hours in each of those years
    (year 0 is normally zero).
    """
    if len(per_turbine_expenditures) != len(hours):
        raise ValueError("expenditure and hours sequences must have equal length")
    denominator = sum(hours) * tariff_gbp_per_mwh
    if denominator <= 0:
        raise ValueError("total tariff-weighted hours must be positive")
    return sum(per_turbine_expenditures) / denominator


def bep_from_capacity_factor(rating_mw: float, capacity_factor: float) -> float:
    """Break-even power implied by a target capacity factor, MW."""
    if not 0 < capacity_factor <= 1:
        raise ValueError(f"capacity factor must be in (0, 1], got {capacity_factor}")
    return rating_mw * capacity_factor


def bep_functional(p_avg_mw: float, bep: BreakEvenSpec, n_t: int | float) -> float:
    """Design score J = P_avg - P_BE * n_t (economies of volume ignored)."""
    if n_t < 0:
        raise ValueError(f"n_t must be >= 0, got {n_t}")
    return p_avg_mw - bep.p_be_mw * n_t


def bep_ev_functional(p_avg_mw: float, bep: BreakEvenSpec, n_t: int | float) -> float:
    """Design score with the break-even power falling linearly in n_t.

    J = P_avg - (P_BE - EV * n_t) * n_t. Warns (but still evaluates) when
    EV * n_t reaches P_BE, outside the model's validity window.
    """
    if n_t < 0:
        raise ValueError(f"n_t must be >= 0, got {n_t}")
    if bep.ev_mw_per_turbine * n_t >= bep.p_be_mw and n_t > 0:
        warnings.warn(
            f"EV * n_t = {bep.ev_mw_per_turbine * n_t:g} reaches the break-even power "
            f"{bep.p_be_mw:g}; the linear economies-of-volume model is not valid here",
            ValidityWindowWarning,
            stacklevel=2,
        )
    return p_avg_mw - (bep.p_be_mw - bep.ev_mw_per_turbine * n_t) * n_t


def profit_margin(revenue: float, cost: float) -> float:
    """(revenue - cost) / revenue, as a fraction."""
    if revenue <= 0:
        raise ValueError(f"revenue must be positive, got {revenue}")
    return (revenue - cost) / revenue


def functional_sweep(
    power_curve: Sequence[tuple[int, float]],
    design_template: ArrayDesign,
    params: CostParameters,
    tariff: TariffScheme,
    spec: DiscountSpec,
    bep: BreakEvenSpec,
) -> list[dict]:
    """Evaluate every metric along a turbine-count / power curve.

    Each (n_t, P_avg) sample is substituted into ``design_template``
    (availability, efficiency, rating and lifetime are kept). Returns one
    row per sample, in input order.
    """
    if not power_curve:
        raise ValueError("power curve is empty")
    counts = [n for n, _ in power_curve]
    if len(set(counts)) != len(counts):
        raise ValueError("power-curve samples must have distinct n_t values")

    rows = []
    for n_t, p_avg in power_curve:
        design = replace(design_template, n_t=int(n_t), p_avg_mw=float(p_avg))
        schedule = build_schedule(design, params, tariff)
        try:
            row_lcoe: float | None = lcoe(design, params, spec)
        except ValueError:  # zero-power sample: no energy, LCOE undefined
            row_lcoe = None
        rows.append(
            {
                "n_t": int(n_t),
                "p_avg_mw": float(p_avg),
                "power_per_device_mw": float(p_avg) / n_t,
                "j_bep_mw": bep_functional(p_avg, bep, n_t),
                "j_bep_ev_mw": bep_ev_functional(p_avg, bep, n_t),
                "npv_gbp_m": npv(schedule, spec),
                "lcoe_gbp_per_mwh": row_lcoe,
            }
        )
    return rows
