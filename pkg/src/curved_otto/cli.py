"""Command line interface: spectrum tables, cycles, limits, sweeps, searches.

Data goes to stdout (or --out), diagnostics to stderr.  Exit codes: 0 on
success, 2 on argument/domain errors, 3 on truncation failures, 4 on bracket
errors.  CSV output uses a frozen dialect: comma separator, '.' decimal
point, '\\n' line endings, a header row, and 'NA' for not-applicable cells;
numbers are printed with 17 significant digits by default so they re-parse
to bit-identical doubles.

Truncation defaults honor the OTTO_REL_TOL and OTTO_N_MAX environment
variables; explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import IO, Optional, Sequence

from .asymptotics import LimitParams, large_curvature_estimate, small_curvature_estimate
from .cycle import CycleOutcome, OttoParams, run_cycle
from .errors import BracketError, DomainError, TruncationError
from .spectrum import energy, energy_derivative, gap, gap_ratio
from .sweep import (
    FIGURE_IDS,
    Axis,
    SweepSpec,
    SweepTable,
    figure_dataset,
    find_mode_transition,
    find_peak_work,
    sweep_grid,
)
from .thermo import TruncationPolicy

_EXIT_OK = 0
_EXIT_USAGE = 2
_EXIT_NUMERICAL = 3
_EXIT_BRACKET = 4

_DEFAULT_PRECISION = 17


def _format_cell(value, precision: int) -> str:
    if value is None:
        return "NA"
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.{precision}g}"


def _write_csv(stream: IO[str], columns: Sequence[str], rows, precision: int) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(cell, precision) for cell in row])


def _write_json(stream: IO[str], payload) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit(args, write) -> None:
    stream, close = _open_out(args.out)
    try:
        write(stream)
    finally:
        if close:
            stream.close()


def _env_float(name: str) -> Optional[float]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"environment variable {name} is not a number: {raw!r}") from None


def _precision_from(args) -> int:
    return args.precision if args.precision is not None else _DEFAULT_PRECISION


def _policy_from(args) -> TruncationPolicy:
    rel_tol = args.rel_tol
    if rel_tol is None:
        rel_tol = _env_float("OTTO_REL_TOL")
    n_max = args.n_max
    if n_max is None:
        env = _env_float("OTTO_N_MAX")
        n_max = int(env) if env is not None else None
    defaults = TruncationPolicy()
    return TruncationPolicy(
        rel_tol=rel_tol if rel_tol is not None else defaults.rel_tol,
        n_max=n_max if n_max is not None else defaults.n_max,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rel-tol", type=float, default=None, help="truncation tolerance override")
    parser.add_argument("--n-max", type=int, default=None, help="truncation level cap override")
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help=f"significant digits for printed numbers (default {_DEFAULT_PRECISION})",
    )
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_cycle_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda-cold", type=float, required=True, help="curvature at the cold bath")
    parser.add_argument("--lambda-hot", type=float, required=True, help="curvature at the hot bath")
    parser.add_argument("--t-hot", type=float, required=True, help="hot bath temperature")
    parser.add_argument("--t-cold", type=float, required=True, help="cold bath temperature")


def _outcome_payload(outcome: CycleOutcome) -> dict:
    payload = {
        "q_hot": outcome.q_hot,
        "q_cold_out": outcome.q_cold_out,
        "work": outcome.work,
    }
    if outcome.efficiency is not None:
        payload["efficiency"] = outcome.efficiency
    if outcome.cop is not None:
        payload["cop"] = outcome.cop
    payload["mode"] = str(outcome.mode)
    payload["n_levels"] = outcome.n_levels
    return payload


def _cmd_spectrum(args) -> int:
    rows = []
    for n in range(args.levels):
        rows.append(
            (
                n,
                energy(n, args.curvature),
                energy_derivative(n, args.curvature),
                gap(n, args.curvature),
                gap_ratio(n, args.curvature),
            )
        )
    columns = ("n", "energy", "energy_derivative", "gap", "gap_ratio")
    _emit(args, lambda s: _write_csv(s, columns, rows, _precision_from(args)))
    return _EXIT_OK


def _cmd_cycle(args) -> int:
    params = OttoParams(
        lambda_cold=args.lambda_cold,
        lambda_hot=args.lambda_hot,
        t_hot=args.t_hot,
        t_cold=args.t_cold,
        policy=_policy_from(args),
    )
    payload = _outcome_payload(run_cycle(params))
    _emit(args, lambda s: _write_json(s, payload))
    return _EXIT_OK


def _cmd_limits(args) -> int:
    policy = _policy_from(args)
    if args.regime == "small":
        params = LimitParams(
            lam=args.curvature, epsilon=args.epsilon, theta_temp=args.theta, t_ref=args.t_ref
        )
        estimate = small_curvature_estimate(params, policy)
        exact = run_cycle(
            OttoParams(
                lambda_cold=args.curvature - args.epsilon,
                lambda_hot=args.curvature,
                t_hot=args.t_ref + args.theta,
                t_cold=args.t_ref,
                policy=policy,
            )
        )
        payload = {
            "regime": "small",
            "work_estimate": estimate.work,
            "q_hot_estimate": estimate.heat_in,
            "efficiency_estimate": estimate.efficiency,
        }
    else:
        estimate = large_curvature_estimate(args.curvature, args.epsilon, args.t_hot, args.t_cold)
        exact = run_cycle(
            OttoParams(
                lambda_cold=args.curvature - args.epsilon,
                lambda_hot=args.curvature,
                t_hot=args.t_hot,
                t_cold=args.t_cold,
                policy=policy,
            )
        )
        payload = {
            "regime": "large",
            "work_estimate": estimate.work,
            "q_hot_estimate": estimate.heat_in,
            "efficiency_estimate": estimate.efficiency,
        }
    payload["exact"] = _outcome_payload(exact)
    _emit(args, lambda s: _write_json(s, payload))
    return _EXIT_OK


def _parse_axis(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise DomainError(f"axis must look like name:lo:hi:count, got {text!r}")
    name, lo, hi, count = parts
    try:
        return Axis(name=name, lo=float(lo), hi=float(hi), count=int(count))
    except ValueError as exc:
        raise DomainError(f"bad axis {text!r}: {exc}") from None


def _parse_fixed(text: str) -> tuple[str, float]:
    if "=" not in text:
        raise DomainError(f"fixed parameter must look like name=value, got {text!r}")
    name, raw = text.split("=", 1)
    try:
        return name.strip(), float(raw)
    except ValueError:
        raise DomainError(f"bad fixed value {text!r}") from None


def _read_config(path: str) -> dict[str, list[str]]:
    entries: dict[str, list[str]] = {}
    try:
        with open(path) as handle:
            for lineno, line in enumerate(handle, 1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                if "=" not in stripped:
                    raise DomainError(f"{path}:{lineno}: expected key = value, got {stripped!r}")
                key, value = stripped.split("=", 1)
                entries.setdefault(key.strip(), []).append(value.strip())
    except OSError as exc:
        raise DomainError(f"cannot read config {path!r}: {exc}") from None
    return entries


def _cmd_sweep(args) -> int:
    axes = [_parse_axis(a) for a in (args.axis or [])]
    fixed = dict(_parse_fixed(f) for f in (args.fixed or []))
    quantities = [q.strip() for q in args.quantities.split(",")] if args.quantities else []

    if args.config:
        config = _read_config(args.config)
        if not axes:
            axes = [_parse_axis(a) for a in config.get("axis", [])]
        if not fixed:
            fixed = dict(_parse_fixed(f) for f in config.get("fixed", []))
        if not quantities and "quantities" in config:
            quantities = [q.strip() for q in config["quantities"][-1].split(",")]
        for key in ("rel-tol", "n-max", "out", "format", "precision"):
            if key in config and getattr(args, key.replace("-", "_")) is None:
                value = config[key][-1]
                if key == "rel-tol":
                    args.rel_tol = float(value)
                elif key == "n-max":
                    args.n_max = int(value)
                elif key == "precision":
                    args.precision = int(value)
                else:
                    setattr(args, key, value)

    if not axes:
        raise DomainError("sweep needs at least one --axis (or a config file providing one)")
    if not quantities:
        raise DomainError("sweep needs --quantities (or a config file providing them)")
    spec = SweepSpec(axes=tuple(axes), fixed=fixed, quantities=tuple(quantities))
    table = sweep_grid(spec, _policy_from(args))
    _report_row_errors(table)
    _emit_table(args, table)
    return _EXIT_OK


def _cmd_figure(args) -> int:
    table = figure_dataset(args.figure_id, _policy_from(args))
    _report_row_errors(table)
    _emit_table(args, table)
    return _EXIT_OK


def _report_row_errors(table: SweepTable) -> None:
    for index, message in table.row_errors:
        print(f"warning: row {index}: {message}", file=sys.stderr)


def _emit_table(args, table: SweepTable) -> None:
    if (args.format or "csv") == "json":
        payload = {
            "columns": list(table.columns),
            "rows": [list(row) for row in table.rows],
            "fixed": table.spec.fixed,
            "policy": {"rel_tol": table.policy.rel_tol, "n_max": table.policy.n_max},
        }
        _emit(args, lambda s: _write_json(s, payload))
    else:
        _emit(args, lambda s: _write_csv(s, table.columns, table.rows, _precision_from(args)))


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"range must look like lo:hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise DomainError(f"bad range {text!r}") from None


def _cmd_transition(args) -> int:
    result = find_mode_transition(
        args.lambda_cold,
        args.t_hot,
        args.t_cold,
        _parse_range(args.bracket),
        policy=_policy_from(args),
    )
    payload = {
        "lambda_hot_star": result.lambda_hot,
        "q_hot_at_root": result.q_hot,
        "bracket_lo": result.bracket[0],
        "bracket_hi": result.bracket[1],
        "q_hot_at_lo": result.f_lo,
        "q_hot_at_hi": result.f_hi,
        "iterations": result.iterations,
    }
    _emit(args, lambda s: _write_json(s, payload))
    return _EXIT_OK


def _cmd_peak(args) -> int:
    result = find_peak_work(
        args.lambda_cold,
        args.t_hot,
        args.t_cold,
        _parse_range(args.range),
        policy=_policy_from(args),
    )
    payload = {
        "lambda_hot_at_peak": result.lambda_hot,
        "peak_work": result.work,
        "unimodal": result.unimodal,
        "candidates": [{"lambda_hot": lam, "work": w} for lam, w in result.candidates],
    }
    _emit(args, lambda s: _write_json(s, payload))
    return _EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curved-otto",
        description="Quantum Otto cycle on a circle: spectra, cycles, limits, sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy levels, gaps and curvature derivatives as CSV")
    p.add_argument("--curvature", type=float, required=True)
    p.add_argument("--levels", type=int, default=8, help="number of levels (default %(default)s)")
    _add_common(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("cycle", help="evaluate one Otto cycle, JSON output")
    _add_cycle_params(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_cycle)

    p = sub.add_parser("limits", help="asymptotic estimates next to exact cycle values, JSON")
    regimes = p.add_subparsers(dest="regime", required=True)
    ps = regimes.add_parser("small", help="small-curvature expansion")
    ps.add_argument("--curvature", type=float, required=True, help="common curvature scale")
    ps.add_argument("--epsilon", type=float, required=True, help="curvature difference")
    ps.add_argument("--theta", type=float, required=True, help="bath temperature difference")
    ps.add_argument("--t-ref", type=float, required=True, help="reference (cold-side) temperature")
    _add_common(ps)
    ps.set_defaults(handler=_cmd_limits)
    pl = regimes.add_parser("large", help="theta-series large-curvature limit")
    pl.add_argument("--curvature", type=float, required=True, help="common curvature scale")
    pl.add_argument("--epsilon", type=float, required=True, help="curvature difference")
    pl.add_argument("--t-hot", type=float, required=True)
    pl.add_argument("--t-cold", type=float, required=True)
    _add_common(pl)
    pl.set_defaults(handler=_cmd_limits)

    p = sub.add_parser("sweep", help="grid sweep to CSV (or JSON)")
    p.add_argument("--axis", action="append", help="name:lo:hi:count (repeat for a second axis)")
    p.add_argument("--fixed", action="append", help="name=value (repeatable)")
    p.add_argument("--quantities", default=None, help="comma-separated quantity list")
    p.add_argument("--config", default=None, help="key = value config file mirroring the flags")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("figure", help="dataset behind one of the standard figures, CSV")
    p.add_argument("figure_id", choices=FIGURE_IDS)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_figure)

    p = sub.add_parser("transition", help="bisect the engine-to-refrigerator boundary, JSON")
    p.add_argument("--lambda-cold", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--t-cold", type=float, required=True)
    p.add_argument("--bracket", required=True, help="lo:hi bracket in lambda_hot")
    _add_common(p)
    p.set_defaults(handler=_cmd_transition)

    p = sub.add_parser("peak", help="golden-section search for the work maximum, JSON")
    p.add_argument("--lambda-cold", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--t-cold", type=float, required=True)
    p.add_argument("--range", required=True, help="lo:hi search range in lambda_hot")
    _add_common(p)
    p.set_defaults(handler=_cmd_peak)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else _EXIT_USAGE
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BRACKET


if __name__ == "__main__":
    raise SystemExit(main())
