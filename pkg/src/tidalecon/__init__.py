"""Techno-economic modelling of tidal-stream turbine arrays."""

__version__ = "0.1.0"

from .finance_core import (
    CashFlowSchedule,
    Compounding,
    DiscountSpec,
    discount_factor,
    present_value,
)
from .cost_model import (
    ArrayDesign,
    CostParameters,
    TariffScheme,
    build_schedule,
    capex,
    energy_year,
    hours_generating,
    opex_year,
    revenue_year,
)
from .metrics import (
    BreakEvenSpec,
    IrrUndefinedError,
    NoIrrInRangeError,
    NoPaybackError,
    bep_ev_functional,
    bep_from_capacity_factor,
    bep_functional,
    break_even_power,
    functional_sweep,
    irr,
    lcoe,
    npv,
    payback_period,
    profit_margin,
)
from .cost_estimation import (
    CostBasis,
    CostObservation,
    CostSplit,
    FixedToTurbineRatio,
    fit_higgins_ratio,
    learning_rate_adjust,
    normalize_observation,
    split_from_ratio,
    split_two_points,
)
from .scenarios import (
    ParameterRange,
    ScenarioResult,
    builtin_parameters,
    evaluate_scenarios,
    lcoe_rate_elasticity,
    sensitivity_sweep,
)

__all__ = [
    "ArrayDesign",
    "BreakEvenSpec",
    "CashFlowSchedule",
    "Compounding",
    "CostBasis",
    "CostObservation",
    "CostParameters",
    "CostSplit",
    "DiscountSpec",
    "FixedToTurbineRatio",
    "IrrUndefinedError",
    "NoIrrInRangeError",
    "NoPaybackError",
    "ParameterRange",
    "ScenarioResult",
    "TariffScheme",
    "bep_ev_functional",
    "bep_from_capacity_factor",
    "bep_functional",
    "break_even_power",
    "build_schedule",
    "builtin_parameters",
    "capex",
    "discount_factor",
    "energy_year",
    "evaluate_scenarios",
    "fit_higgins_ratio",
    "functional_sweep",
    "hours_generating",
    "irr",
    "lcoe",
    "lcoe_rate_elasticity",
    "learning_rate_adjust",
    "normalize_observation",
    "npv",
    "opex_year",
    "payback_period",
    "present_value",
    "profit_margin",
    "revenue_year",
    "sensitivity_sweep",
    "split_from_ratio",
    "split_two_points",
]
