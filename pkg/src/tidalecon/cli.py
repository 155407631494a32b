"""Command-line front end.

Subcommands:
  metrics    full metric report (NPV, LCOE, payback, IRR, break-even power)
  split      decompose cost observations into fixed / per-turbine components
  scenarios  optimistic / typical / pessimistic metric grid
  sweep      one-at-a-time sensitivity sweep, emitted as CSV
  curve      evaluate the functionals along a turbine-count / power curve

Exit codes: 0 success, 2 input error, 3 internal numerical failure.
Machine output (``--format json|csv``) is byte-identical for identical
inputs; human output carries a version banner unless ``--plain`` is given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Any, Sequence

from . import __version__
from .cost_estimation import (
    CostBasis,
    CostObservation,
    CostSplit,
    FixedToTurbineRatio,
    split_from_ratio,
    split_two_points,
)
from .cost_model import ArrayDesign, CostParameters, TariffScheme, build_schedule
from .finance_core import Compounding, DiscountSpec
from . import metrics as _metrics
from . import scenarios as _scenarios

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


class ConfigError(ValueError):
    """The configuration file is missing, malformed or inconsistent."""


@dataclass(frozen=True)
class ProjectInputs:
    """Everything the engine needs, resolved from one config file."""

    design: ArrayDesign
    params: CostParameters
    tariff: TariffScheme
    spec: DiscountSpec
    bep: _metrics.BreakEvenSpec
    overrides: dict[str, float]


# ---------------------------------------------------------------------------
# Config handling

def _require(block: dict, key: str, context: str) -> Any:
    if key not in block:
        raise ConfigError(f"missing key {key!r} in {context}")
    return block[key]


def _observation_from_dict(entry: dict, context: str) -> CostObservation:
    rate = float(entry.get("rate_to_gbp", 1.0))
    if "total_gbp_m" in entry:
        return CostObservation(
            n_t=float(_require(entry, "n_t", context)),
            cost=float(entry["total_gbp_m"]),
            basis=CostBasis.TOTAL,
            currency_rate=rate,
        )
    if "per_mw_gbp_m" in entry:
        return CostObservation(
            n_t=float(_require(entry, "n_t", context)),
            cost=float(entry["per_mw_gbp_m"]),
            basis=CostBasis.PER_MW,
            capacity_mw=float(_require(entry, "capacity_mw", context)),
            currency_rate=rate,
        )
    raise ConfigError(f"{context} needs either 'total_gbp_m' or 'per_mw_gbp_m'")


def _estimate_costs(directive: dict) -> CostParameters:
    method = _require(directive, "method", "costs.estimate")
    if method == "two_points":
        capex_points = _require(directive, "capex", "costs.estimate")
        opex_points = _require(directive, "opex", "costs.estimate")
        if len(capex_points) != 2 or len(opex_points) != 2:
            raise ConfigError("two_points estimation needs exactly two capex and two opex observations")
        ca = split_two_points(
            _observation_from_dict(capex_points[0], "costs.estimate.capex[0]"),
            _observation_from_dict(capex_points[1], "costs.estimate.capex[1]"),
        )
        op = split_two_points(
            _observation_from_dict(opex_points[0], "costs.estimate.opex[0]"),
            _observation_from_dict(opex_points[1], "costs.estimate.opex[1]"),
        )
    elif method == "ratio":
        ratio = FixedToTurbineRatio(float(_require(directive, "ratio", "costs.estimate")))
        ca = split_from_ratio(
            _observation_from_dict(_require(directive, "capex", "costs.estimate"), "costs.estimate.capex"),
            ratio,
        )
        op = split_from_ratio(
            _observation_from_dict(_require(directive, "opex", "costs.estimate"), "costs.estimate.opex"),
            ratio,
        )
    else:
        raise ConfigError(f"unknown estimation method {method!r}; expected 'two_points' or 'ratio'")
    return CostParameters(ca_f=ca.fixed, ca_t=ca.per_turbine, o_f=op.fixed, o_t=op.per_turbine)


def load_config(path: str) -> ProjectInputs:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path} is not valid JSON: {err}") from err

    array = _require(raw, "array", "config")
    design = ArrayDesign(
        n_t=int(_require(array, "n_t", "array")),
        mw_t=float(_require(array, "mw_t", "array")),
        p_avg_mw=float(_require(array, "p_avg_mw", "array")),
        lifetime_years=int(_require(array, "lifetime_years", "array")),
        availability=array.get("availability", 1.0),
        electrical_efficiency=float(array.get("electrical_efficiency", 1.0)),
    )

    costs = _require(raw, "costs", "config")
    explicit = {"ca_f", "ca_t", "o_f", "o_t"} & set(costs)
    if "estimate" in costs and explicit:
        raise ConfigError("config must give either explicit costs or an estimate directive, not both")
    if "estimate" in costs:
        params = _estimate_costs(costs["estimate"])
    elif len(explicit) == 4:
        params = CostParameters(
            ca_f=float(costs["ca_f"]),
            ca_t=float(costs["ca_t"]),
            o_f=float(costs["o_f"]),
            o_t=float(costs["o_t"]),
        )
    else:
        raise ConfigError("costs block needs all of ca_f/ca_t/o_f/o_t, or an 'estimate' directive")

    finance = _require(raw, "finance", "config")
    spec = DiscountSpec(
        annual_rate=float(_require(finance, "r", "finance")),
        mode=Compounding(finance.get("mode", "discrete")),
        periods_per_year=int(finance.get("periods_per_year", 1)),
    )
    tariff = TariffScheme(t_e=float(_require(finance, "tariff_gbp_per_mwh", "finance")))

    bep_block = raw.get("break_even")
    if bep_block is not None:
        bep = _metrics.BreakEvenSpec(
            p_be_mw=float(_require(bep_block, "p_be_mw", "break_even")),
            ev_mw_per_turbine=float(bep_block.get("ev_mw_per_turbine", 0.0)),
        )
    else:
        bep = _metrics.BreakEvenSpec(p_be_mw=_default_break_even(design, params, tariff))

    overrides = {str(k): float(v) for k, v in raw.get("scenario_overrides", {}).items()}
    return ProjectInputs(
        design=design, params=params, tariff=tariff, spec=spec, bep=bep, overrides=overrides
    )


def _default_break_even(
    design: ArrayDesign, params: CostParameters, tariff: TariffScheme
) -> float:
    """Break-even power implied by the per-turbine cost components."""
    expenditures = [params.ca_t * 1e6] + [params.o_t * 1e6] * design.lifetime_years
    hours = [0.0] + [
        8760.0 * design.availability_in_year(year)
        for year in range(1, design.lifetime_years + 1)
    ]
    return _metrics.break_even_power(expenditures, hours, tariff.t_e)


# ---------------------------------------------------------------------------
# Output helpers

def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def _cell(value: Any) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _sig3(value: Any) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.3g}"
    return str(value)


def _banner(args: argparse.Namespace) -> str:
    return "" if args.plain else f"tidalecon v{__version__}\n"


# ---------------------------------------------------------------------------
# Subcommands

_METRIC_KEYS = (
    ("npv", "npv_gbp_m"),
    ("lcoe", "lcoe_gbp_per_mwh"),
    ("payback", "payback_years"),
    ("irr", "irr"),
)


def cmd_metrics(args: argparse.Namespace) -> int:
    inputs = load_config(args.config)
    design, params, tariff, spec = inputs.design, inputs.params, inputs.tariff, inputs.spec
    schedule = build_schedule(design, params, tariff)

    report: dict[str, float | None] = {}
    notes: dict[str, str] = {}
    report["npv_gbp_m"] = _metrics.npv(schedule, spec)
    report["lcoe_gbp_per_mwh"] = _metrics.lcoe(design, params, spec)
    try:
        report["payback_years"] = _metrics.payback_period(schedule, spec)
    except _metrics.NoPaybackError as err:
        report["payback_years"] = None
        notes["payback_years"] = str(err)
    try:
        report["irr"] = _metrics.irr(schedule)
    except (_metrics.IrrUndefinedError, _metrics.NoIrrInRangeError) as err:
        report["irr"] = None
        notes["irr"] = str(err)

    p_be = inputs.bep.p_be_mw
    report["break_even_power_mw"] = p_be
    report["bep_capacity_factor"] = p_be / design.mw_t
    report["j_bep_mw"] = _metrics.bep_functional(design.p_avg_mw, inputs.bep, design.n_t)
    report["j_bep_ev_mw"] = _metrics.bep_ev_functional(design.p_avg_mw, inputs.bep, design.n_t)

    inputs_echo = {
        "n_t": design.n_t,
        "mw_t": design.mw_t,
        "p_avg_mw": design.p_avg_mw,
        "lifetime_years": design.lifetime_years,
        "ca_f": params.ca_f,
        "ca_t": params.ca_t,
        "o_f": params.o_f,
        "o_t": params.o_t,
        "r": spec.annual_rate,
        "tariff_gbp_per_mwh": tariff.t_e,
    }

    if args.format == "json":
        _emit(_json_dump({"command": "metrics", "inputs": inputs_echo,
                          "metrics": report, "notes": notes}), args.out)
    elif args.format == "csv":
        rows = [(name, _cell(value)) for name, value in report.items()]
        _emit(_csv_text(("metric", "value"), rows), args.out)
    else:
        lines = [_banner(args)]
        lines.append("Project metrics\n")
        for name, value in report.items():
            suffix = f"  ({notes[name]})" if name in notes else ""
            lines.append(f"  {name:22s} {_sig3(value)}{suffix}\n")
        _emit("".join(lines), args.out)
    return EXIT_OK


def _read_observation_csv(path: str, mw_t: float | None) -> list[CostObservation]:
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            fields = reader.fieldnames or []
            observations = []
            for line_number, row in enumerate(reader, start=2):
                try:
                    if "total_gbp_m" in fields:
                        observations.append(
                            CostObservation(
                                n_t=float(row["n_t"]),
                                cost=float(row["total_gbp_m"]),
                                basis=CostBasis.TOTAL,
                                currency_rate=float(row.get("rate_to_gbp") or 1.0),
                            )
                        )
                    elif "per_mw_gbp_m" in fields:
                        capacity = float(row["capacity_mw"])
                        if mw_t is None:
                            raise ConfigError(
                                "per-MW observation CSV needs --mw-t to derive turbine counts"
                            )
                        observations.append(
                            CostObservation(
                                n_t=capacity / mw_t,
                                cost=float(row["per_mw_gbp_m"]),
                                basis=CostBasis.PER_MW,
                                capacity_mw=capacity,
                                currency_rate=float(row.get("rate_to_gbp") or 1.0),
                            )
                        )
                    else:
                        raise ConfigError(
                            f"{path}: header must contain 'n_t,total_gbp_m' or "
                            "'capacity_mw,per_mw_gbp_m,rate_to_gbp'"
                        )
                except (KeyError, TypeError, ValueError) as err:
                    if isinstance(err, ConfigError):
                        raise
                    raise ConfigError(f"{path}: malformed row at line {line_number}: {err}") from err
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from err
    if not observations:
        raise ConfigError(f"{path}: no observation rows found")
    return observations


def _parse_inline_observation(text: str, currency_rate: float) -> CostObservation:
    try:
        n_text, total_text = text.split("=", 1)
        return CostObservation(
            n_t=float(n_text), cost=float(total_text),
            basis=CostBasis.TOTAL, currency_rate=currency_rate,
        )
    except ValueError as err:
        raise ConfigError(f"bad observation {text!r}; expected N_T=TOTAL") from err


def _split_report(args: argparse.Namespace, method: str, inputs_echo: dict,
                  ca: CostSplit, op: CostSplit | None,
                  warning_messages: list[str]) -> int:
    costs = {"ca_f": ca.fixed, "ca_t": ca.per_turbine}
    if op is not None:
        costs["o_f"] = op.fixed
        costs["o_t"] = op.per_turbine

    if args.format == "json":
        _emit(_json_dump({"command": "split", "method": method, "inputs": inputs_echo,
                          "costs": costs, "warnings": warning_messages}), args.out)
    elif args.format == "csv":
        rows = [(name, _cell(value)) for name, value in costs.items()]
        _emit(_csv_text(("component", "gbp_m"), rows), args.out)
    else:
        lines = [_banner(args)]
        lines.append(f"Cost split ({method})\n")
        lines.append("  inputs: " + ", ".join(f"{k}={_sig3(v)}" for k, v in inputs_echo.items()) + "\n")
        for name, value in costs.items():
            lines.append(f"  {name:6s} {_sig3(value)}\n")
        for message in warning_messages:
            lines.append(f"  warning: {message}\n")
        _emit("".join(lines), args.out)
    return EXIT_OK


def cmd_split(args: argparse.Namespace) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.method == "two-points":
            if args.capex_csv:
                capex_obs = _read_observation_csv(args.capex_csv, args.mw_t)
            else:
                capex_obs = [
                    _parse_inline_observation(text, args.currency_rate)
                    for text in (args.capex or [])
                ]
            if len(capex_obs) != 2:
                raise ConfigError("two-points needs exactly two CAPEX observations")
            ca = split_two_points(capex_obs[0], capex_obs[1])

            op = None
            opex_obs: list[CostObservation] = []
            if args.opex_csv:
                opex_obs = _read_observation_csv(args.opex_csv, args.mw_t)
            elif args.opex:
                opex_obs = [
                    _parse_inline_observation(text, args.currency_rate) for text in args.opex
                ]
            if opex_obs:
                if len(opex_obs) != 2:
                    raise ConfigError("two-points needs exactly two OPEX observations")
                op = split_two_points(opex_obs[0], opex_obs[1])
            inputs_echo = {
                "capex_points": [(o.n_t, o.cost) for o in capex_obs],
                "opex_points": [(o.n_t, o.cost) for o in opex_obs],
                "currency_rate": args.currency_rate,
            }
            method = "two_points"
        else:  # ratio
            if args.ratio is None:
                raise ConfigError("ratio method needs --ratio")
            ratio = FixedToTurbineRatio(args.ratio)
            capex_obs = _ratio_observation(args, "capex")
            ca = split_from_ratio(capex_obs, ratio)
            op = None
            opex_obs_single = _ratio_observation(args, "opex", required=False)
            if opex_obs_single is not None:
                op = split_from_ratio(opex_obs_single, ratio)
            inputs_echo = {
                "ratio": args.ratio,
                "capex_n_t": capex_obs.n_t,
                "capex_total_gbp_m": capex_obs.cost
                if capex_obs.basis is CostBasis.TOTAL
                else capex_obs.cost * capex_obs.capacity_mw,
            }
            method = "ratio"
        messages = [str(w.message) for w in caught]
    return _split_report(args, method, inputs_echo, ca, op, messages)


def _ratio_observation(
    args: argparse.Namespace, kind: str, required: bool = True
) -> CostObservation | None:
    total = getattr(args, f"{kind}_total")
    per_mw = getattr(args, f"{kind}_per_mw")
    if total is None and per_mw is None:
        if required:
            raise ConfigError(f"ratio method needs --{kind}-total or --{kind}-per-mw")
        return None
    if per_mw is not None:
        if args.capacity is None or args.mw_t is None:
            raise ConfigError(f"--{kind}-per-mw needs --capacity and --mw-t")
        return CostObservation(
            n_t=args.capacity / args.mw_t,
            cost=per_mw,
            basis=CostBasis.PER_MW,
            capacity_mw=args.capacity,
            currency_rate=args.currency_rate,
        )
    if args.n_t is None:
        raise ConfigError(f"--{kind}-total needs --n-t")
    return CostObservation(
        n_t=args.n_t, cost=total, basis=CostBasis.TOTAL, currency_rate=args.currency_rate
    )


def cmd_scenarios(args: argparse.Namespace) -> int:
    inputs = load_config(args.config)
    results = _scenarios.evaluate_scenarios(inputs.design, inputs.overrides or None)

    if args.format == "json":
        payload = {
            "command": "scenarios",
            "scenarios": [
                {
                    "label": res.label,
                    "parameters": res.parameters,
                    "metrics": res.metrics,
                    "notes": res.notes,
                }
                for res in results
            ],
        }
        _emit(_json_dump(payload), args.out)
    elif args.format == "csv":
        rows = [
            (metric, *(_cell(res.metrics[metric]) for res in results))
            for metric in _scenarios.METRIC_NAMES
        ]
        _emit(_csv_text(("metric", *(res.label for res in results)), rows), args.out)
    else:
        lines = [_banner(args)]
        lines.append(f"{'metric':10s} {'optimistic':>12s} {'typical':>12s} {'pessimistic':>12s}\n")
        for metric in _scenarios.METRIC_NAMES:
            cells = " ".join(f"{_sig3(res.metrics[metric]):>12s}" for res in results)
            lines.append(f"{metric:10s} {cells}\n")
        for res in results:
            for metric, note in res.notes.items():
                lines.append(f"  note [{res.label}/{metric}]: {note}\n")
        _emit("".join(lines), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    inputs = load_config(args.config)
    if args.steps < 1:
        raise ConfigError(f"--steps must be >= 1, got {args.steps}")
    if args.steps == 1:
        grid = [args.start]
    else:
        step = (args.stop - args.start) / (args.steps - 1)
        grid = [args.start + k * step for k in range(args.steps)]
    base = dict(inputs.overrides)
    curve = _scenarios.sensitivity_sweep(
        inputs.design, base if base else "typical", args.param, grid, args.metric
    )
    rows = [(repr(value), _cell(result)) for value, result in curve]
    _emit(_csv_text(("value", args.metric), rows), args.out)
    return EXIT_OK


def _read_power_curve(path: str) -> list[tuple[int, float]]:
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or not {"n_t", "p_avg_mw"} <= set(reader.fieldnames):
                raise ConfigError(f"{path}: power-curve CSV needs header 'n_t,p_avg_mw'")
            samples = []
            for line_number, row in enumerate(reader, start=2):
                try:
                    samples.append((int(row["n_t"]), float(row["p_avg_mw"])))
                except (TypeError, ValueError) as err:
                    raise ConfigError(f"{path}: malformed row at line {line_number}: {err}") from err
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from err
    if not samples:
        raise ConfigError(f"{path}: no power-curve rows found")
    return samples


def cmd_curve(args: argparse.Namespace) -> int:
    inputs = load_config(args.config)
    samples = _read_power_curve(args.power_curve)
    rows = _metrics.functional_sweep(
        samples, inputs.design, inputs.params, inputs.tariff, inputs.spec, inputs.bep
    )
    best_power = max(rows, key=lambda row: row["p_avg_mw"])["n_t"]
    best_j = max(rows, key=lambda row: row["j_bep_mw"])["n_t"]
    for row in rows:
        row["max_power"] = row["n_t"] == best_power
        row["max_j_bep"] = row["n_t"] == best_j

    columns = (
        "n_t", "p_avg_mw", "power_per_device_mw", "j_bep_mw", "j_bep_ev_mw",
        "npv_gbp_m", "lcoe_gbp_per_mwh", "max_power", "max_j_bep",
    )
    if args.format == "json":
        _emit(_json_dump({"command": "curve", "rows": rows}), args.out)
    elif args.format == "csv":
        csv_rows = [tuple(_cell(row[col]) for col in columns) for row in rows]
        _emit(_csv_text(columns, csv_rows), args.out)
    else:
        lines = [_banner(args)]
        lines.append(" ".join(f"{col:>20s}" for col in columns) + "\n")
        for row in rows:
            lines.append(" ".join(f"{_sig3(row[col]):>20s}" for col in columns) + "\n")
        _emit("".join(lines), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tidalecon",
        description="Techno-economic metrics for tidal-stream turbine arrays",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--out", default=None, help="write output to a file instead of stdout")
    common.add_argument("--plain", action="store_true", help="suppress the version banner")

    sub = parser.add_subparsers(dest="command", required=True)

    p_metrics = sub.add_parser("metrics", parents=[common], help="full metric report")
    p_metrics.add_argument("config")
    p_metrics.set_defaults(func=cmd_metrics)

    p_split = sub.add_parser("split", parents=[common], help="cost decomposition")
    p_split.add_argument("method", choices=("two-points", "ratio"))
    p_split.add_argument("--capex", action="append", metavar="N_T=TOTAL",
                         help="inline CAPEX observation (repeat twice for two-points)")
    p_split.add_argument("--opex", action="append", metavar="N_T=TOTAL")
    p_split.add_argument("--capex-csv", default=None)
    p_split.add_argument("--opex-csv", default=None)
    p_split.add_argument("--currency-rate", type=float, default=1.0,
                         help="multiplier converting inline totals to GBP")
    p_split.add_argument("--ratio", type=float, default=None,
                         help="fixed-to-turbine cost ratio (ratio method)")
    p_split.add_argument("--capex-total", type=float, default=None)
    p_split.add_argument("--opex-total", type=float, default=None)
    p_split.add_argument("--capex-per-mw", type=float, default=None)
    p_split.add_argument("--opex-per-mw", type=float, default=None)
    p_split.add_argument("--capacity", type=float, default=None, help="array capacity, MW")
    p_split.add_argument("--n-t", type=float, default=None, help="turbine count (may be fractional)")
    p_split.add_argument("--mw-t", type=float, default=None, help="turbine rating, MW")
    p_split.set_defaults(func=cmd_split)

    p_scen = sub.add_parser("scenarios", parents=[common],
                            help="optimistic/typical/pessimistic grid")
    p_scen.add_argument("config")
    p_scen.set_defaults(func=cmd_scenarios)

    p_sweep = sub.add_parser("sweep", parents=[common], help="one-at-a-time sensitivity sweep")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--metric", required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_curve = sub.add_parser("curve", parents=[common],
                             help="evaluate functionals along a power curve")
    p_curve.add_argument("config")
    p_curve.add_argument("--power-curve", required=True)
    p_curve.set_defaults(func=cmd_curve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ArithmeticError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
