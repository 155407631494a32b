"""Built-in optimistic/typical/pessimistic parameter dataset plus scenario
enumeration and one-at-a-time sensitivity sweeps.

The cost, discount-rate and lifetime ranges come from a literature survey
of published tidal-stream cost data; tariff and availability bounds are
added from the same sources' revenue discussion.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .cost_model import ArrayDesign, CostParameters, TariffScheme, build_schedule
from .finance_core import DiscountSpec
from . import metrics as _metrics

SCENARIO_LABELS = ("optimistic", "typical", "pessimistic")
METRIC_NAMES = ("npv", "lcoe", "payback", "irr")


@dataclass(frozen=True)
class ParameterRange:
    """Optimistic / typical / pessimistic values for one model input."""

    name: str
    optimistic: float
    typical: float
    pessimistic: float
    units: str

    def value(self, label: str) -> float:
        if label not in SCENARIO_LABELS:
            raise ValueError(f"unknown scenario {label!r}; expected one of {SCENARIO_LABELS}")
        return getattr(self, label)


# Collated estimates. Optimistic/pessimistic orientation follows the effect
# on project economics, so lifetime runs 30/25/20 while costs ascend.
_PARAMETER_TABLE = (
    ParameterRange("ca_f", 5.6, 9.2, 14.4, "GBP m"),
    ParameterRange("ca_t", 2.4, 3.3, 4.4, "GBP m per turbine"),
    ParameterRange("o_f", 0.27, 0.32, 0.87, "GBP m per year"),
    ParameterRange("o_t", 0.094, 0.15, 0.26, "GBP m per year per turbine"),
    ParameterRange("r", 0.05, 0.10, 0.15, "fraction per year"),
    ParameterRange("lifetime", 30, 25, 20, "years"),
    ParameterRange("tariff", 290, 150, 40, "GBP per MWh"),
    ParameterRange("availability", 0.98, 0.95, 0.90, "fraction"),
)


@dataclass(frozen=True)
class ScenarioResult:
    """Metrics for one scenario, with every resolved input echoed.

    ``metrics`` maps metric name to value, or to None when the metric is
    undefined for these inputs (the reason then appears in ``notes``).
    """

    label: str
    parameters: dict[str, float]
    metrics: dict[str, float | None]
    notes: dict[str, str]


def builtin_parameters() -> tuple[ParameterRange, ...]:
    """The built-in parameter dataset, one range per model input."""
    return _PARAMETER_TABLE


def parameter_range(name: str) -> ParameterRange:
    for entry in _PARAMETER_TABLE:
        if entry.name == name:
            return entry
    known = ", ".join(entry.name for entry in _PARAMETER_TABLE)
    raise ValueError(f"unknown parameter {name!r}; valid names: {known}")


def _resolve(label: str, overrides: Mapping[str, float] | None) -> dict[str, float]:
    values = {entry.name: entry.value(label) for entry in _PARAMETER_TABLE}
    if overrides:
        for name, value in overrides.items():
            parameter_range(name)  # reject unknown names
            values[name] = value
    return values


def _apply(design: ArrayDesign, values: Mapping[str, float]):
    params = CostParameters(
        ca_f=values["ca_f"], ca_t=values["ca_t"], o_f=values["o_f"], o_t=values["o_t"]
    )
    tariff = TariffScheme(t_e=values["tariff"])
    spec = DiscountSpec(annual_rate=values["r"])
    bound_design = replace(
        design,
        lifetime_years=int(values["lifetime"]),
        availability=values["availability"],
    )
    return bound_design, params, tariff, spec


def compute_metrics(
    design: ArrayDesign, values: Mapping[str, float]
) -> tuple[dict[str, float | None], dict[str, str]]:
    """Evaluate NPV, LCOE, payback and IRR; undefined metrics become None."""
    bound_design, params, tariff, spec = _apply(design, values)
    schedule = build_schedule(bound_design, params, tariff)

    results: dict[str, float | None] = {}
    notes: dict[str, str] = {}
    results["npv"] = _metrics.npv(schedule, spec)
    results["lcoe"] = _metrics.lcoe(bound_design, params, spec)
    try:
        results["payback"] = _metrics.payback_period(schedule, spec)
    except _metrics.NoPaybackError as err:
        results["payback"] = None
        notes["payback"] = str(err)
    try:
        results["irr"] = _metrics.irr(schedule)
    except (_metrics.IrrUndefinedError, _metrics.NoIrrInRangeError) as err:
        results["irr"] = None
        notes["irr"] = str(err)
    return results, notes


def evaluate_scenarios(
    design: ArrayDesign, overrides: Mapping[str, float] | None = None
) -> tuple[ScenarioResult, ScenarioResult, ScenarioResult]:
    """Metrics under the optimistic, typical and pessimistic columns.

    Each scenario binds every built-in parameter from its column; explicit
    ``overrides`` (parameter name to value) replace the bound value in all
    three scenarios.
    """
    results = []
    for label in SCENARIO_LABELS:
        values = _resolve(label, overrides)
        metric_values, notes = compute_metrics(design, values)
        results.append(
            ScenarioResult(label=label, parameters=values, metrics=metric_values, notes=notes)
        )
    return tuple(results)


def sensitivity_sweep(
    design: ArrayDesign,
    base_scenario: str | Mapping[str, float],
    parameter: str,
    grid: Sequence[float],
    metric: str,
) -> list[tuple[float, float | None]]:
    """One-at-a-time sweep of one parameter, all others held at the base.

    ``base_scenario`` is a scenario label or a full parameter mapping.
    Returns (value, metric) pairs in grid order; None marks grid points
    where the metric is undefined.
    """
    if metric not in METRIC_NAMES:
        raise ValueError(f"unknown metric {metric!r}; valid names: {', '.join(METRIC_NAMES)}")
    parameter_range(parameter)
    if not grid:
        raise ValueError("sweep grid is empty")
    if isinstance(base_scenario, str):
        base = _resolve(base_scenario, None)
    else:
        base = _resolve("typical", base_scenario)

    curve = []
    for value in grid:
        values = dict(base)
        values[parameter] = value
        metric_values, _ = compute_metrics(design, values)
        curve.append((value, metric_values[metric]))
    return curve


def lcoe_rate_elasticity(
    design: ArrayDesign, params: CostParameters, r_low: float, r_high: float
) -> float:
    """Fractional LCOE change per percentage point of discount rate.

    Reported relative to the higher-rate LCOE, so a positive value means
    the LCOE falls as the rate is reduced from r_high to r_low.
    """
    if r_low >= r_high:
        raise ValueError(f"need r_low < r_high, got {r_low} >= {r_high}")
    lcoe_low = _metrics.lcoe(design, params, DiscountSpec(annual_rate=r_low))
    lcoe_high = _metrics.lcoe(design, params, DiscountSpec(annual_rate=r_high))
    points = (r_high - r_low) * 100.0
    return (lcoe_high - lcoe_low) / lcoe_high / points
