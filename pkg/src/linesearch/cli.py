"""Command line front end.

Subcommands::

    linesearch optimal --lambda 1 --Lambda 10 [--eps 1e-9] [--format json|csv]
    linesearch optimal --sweep --rho-min 1 --rho-max 1e6 --points 50
    linesearch reach   --ratio 7 --lambda 1
    linesearch verify  --lambda 1 --Lambda 10 [--grid-points 100000]
    linesearch verify  --sweep --rho-min 2 --rho-max 1e4 --points 20
    linesearch mray    --m 3 --a 0 --b 1 [--horizon 200]

Results go to stdout as a single JSON document (``schema_version`` "1") or,
for sweeps and ``--format csv``, as delimited rows.  Every float is printed
with 17 significant digits so parsed values reproduce the computed doubles
bit for bit.  Diagnostics go to stderr; the level is taken from the
LINESEARCH_LOG environment variable (error, info or debug).  The exit code
is 0 only if every requested computation and self-check succeeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from typing import Any

import numpy as np

from . import mrays, reach, simulate
from .optimal import SearchProblem, StrategyReport, optimize
from .solve import MODE_LIMIT

SCHEMA_VERSION = "1"

logger = logging.getLogger("linesearch.cli")


def _setup_logging() -> None:
    level_name = os.environ.get("LINESEARCH_LOG", "error").lower()
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        level_name, logging.ERROR
    )
    root = logging.getLogger("linesearch")
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
    root.setLevel(level)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.16e}"


def dumps_record(obj: Any, indent: int = 0) -> str:
    """JSON text with floats at full precision (17 significant digits)."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {dumps_record(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_fmt_float(v) if isinstance(v, float) else str(v) for v in obj) + "]"
        items = [f"{pad}  {dumps_record(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def parse_record(text: str) -> dict:
    """Inverse of :func:`dumps_record` for the structured format."""
    return json.loads(text)


def _flatten(obj: Any, prefix: str = "") -> dict[str, str]:
    out: dict[str, str] = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            out.update(_flatten(v, key))
    elif isinstance(obj, (list, tuple)):
        cells = [
            _fmt_float(v) if isinstance(v, float) else str(v)
            for v in obj
        ]
        out[prefix] = ";".join(cells)
    elif isinstance(obj, bool):
        out[prefix] = "true" if obj else "false"
    elif isinstance(obj, float):
        out[prefix] = _fmt_float(obj)
    else:
        out[prefix] = str(obj)
    return out


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(dumps_record(record))
    else:
        flat = _flatten(record)
        print(",".join(flat.keys()))
        print(",".join(flat.values()))


def _emit_rows(rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        print(dumps_record(rows))
        return
    if not rows:
        return
    flat_rows = [_flatten(r) for r in rows]
    keys = list(flat_rows[0].keys())
    print(",".join(keys))
    for fr in flat_rows:
        print(",".join(fr.get(k, "") for k in keys))


def _report_payload(report: StrategyReport) -> tuple[dict, dict]:
    strategy = report.strategy
    results = {
        "n": report.n,
        "a0": report.a0,
        "cr": report.cr,
        "sequence": list(strategy.turns) + [strategy.terminal],
        "turns": list(strategy.turns),
        "terminal": strategy.terminal,
    }
    diagnostics = {
        "mode": report.mode,
        "cr_error_bound": report.cr_error_bound,
        "residual": report.residual,
        "bracket_width": report.bracket_width,
    }
    return results, diagnostics


def _record(command: str, inputs: dict, results: Any, diagnostics: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    }


def _cmd_optimal(args: argparse.Namespace) -> int:
    if args.sweep:
        return _sweep(args, verify=False)
    problem = _problem_from(args)
    report = optimize(problem)
    results, diagnostics = _report_payload(report)
    inputs = {"lambda": problem.lambda_, "Lambda": problem.Lambda, "eps": problem.epsilon}
    _emit(_record("optimal", inputs, results, diagnostics), args.format or "json")
    return 0


def _problem_from(args: argparse.Namespace) -> SearchProblem:
    if getattr(args, "log2_rho", None) is not None:
        return SearchProblem.from_log2_rho(
            args.log2_rho, lambda_=args.lambda_, epsilon=args.eps
        )
    if args.Lambda is None:
        raise ValueError("either --Lambda or --log2-rho is required")
    return SearchProblem(lambda_=args.lambda_, Lambda=args.Lambda, epsilon=args.eps)


def _cmd_reach(args: argparse.Namespace) -> int:
    result = reach.maximal_reach(reach.ReachQuery(ratio=args.ratio, lambda_=args.lambda_))
    strategy = result.strategy
    results = {
        "Lambda": result.Lambda,
        "n": result.n,
        "a0": result.a0,
        "sequence": list(strategy.turns) + [strategy.terminal],
        "turns": list(strategy.turns),
        "terminal": strategy.terminal,
    }
    inputs = {"ratio": args.ratio, "lambda": args.lambda_}
    _emit(_record("reach", inputs, results, {"mode": "exact_inverse"}), args.format or "json")
    return 0


def _verify_one(problem: SearchProblem, grid_points: int) -> tuple[dict, dict, bool]:
    """Optimize, then cross-examine the result with the simulator.

    In limit-approximation mode the intervals are not promised to equalize,
    so that check degrades to |simulated - reported| <= the mode's bound.
    """
    report = optimize(problem)
    strategy = report.strategy
    wcr = simulate.worst_case_ratio(strategy, problem.lambda_, problem.Lambda)
    grid = simulate.grid_sweep_ratio(strategy, problem.lambda_, problem.Lambda, grid_points)
    sups = [s for (_, s) in wcr.per_interval]
    base_ratios = {}
    for name in ("power_of_two", "f_infinity", "los_sqrt", "single_shot"):
        b = simulate.baselines(name, problem.lambda_, problem.Lambda)
        base_ratios[name] = simulate.worst_case_ratio(b).sup_ratio

    rel = 1e-9 * report.cr
    if report.mode == MODE_LIMIT:
        equalized = True  # approximation mode does not promise equalized intervals
        consistent = abs(wcr.sup_ratio - report.cr) <= report.cr_error_bound + rel
    else:
        equalized = max(sups) - min(sups) <= rel
        consistent = abs(wcr.sup_ratio - report.cr) <= rel
    grid_ok = wcr.sup_ratio - 1e-3 <= grid <= wcr.sup_ratio + rel
    dominant = all(wcr.sup_ratio <= r + 1e-9 for r in base_ratios.values())
    passed = equalized and consistent and grid_ok and dominant

    results = {
        "n": report.n,
        "a0": report.a0,
        "cr": report.cr,
        "worst_case_ratio": wcr.sup_ratio,
        "grid_sweep_ratio": grid,
        "interval_sups": sups,
        "baseline_ratios": base_ratios,
        "checks": {
            "equalization": equalized,
            "cr_consistency": consistent,
            "grid_within_tolerance": grid_ok,
            "dominates_baselines": dominant,
        },
    }
    diagnostics = {
        "mode": report.mode,
        "cr_error_bound": report.cr_error_bound,
        "residual": report.residual,
    }
    return results, diagnostics, passed


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.sweep:
        return _sweep(args, verify=True)
    problem = _problem_from(args)
    results, diagnostics, passed = _verify_one(problem, args.grid_points)
    inputs = {
        "lambda": problem.lambda_,
        "Lambda": problem.Lambda,
        "eps": problem.epsilon,
        "grid_points": args.grid_points,
    }
    _emit(_record("verify", inputs, results, diagnostics), args.format or "json")
    return 0 if passed else 1


def _sweep(args: argparse.Namespace, verify: bool) -> int:
    if args.rho_min is None or args.rho_max is None:
        raise ValueError("sweep mode needs --rho-min and --rho-max")
    if not (1.0 <= args.rho_min <= args.rho_max):
        raise ValueError("need 1 <= rho-min <= rho-max")
    if args.points < 1:
        raise ValueError("need at least one sweep point")
    rhos = np.geomspace(args.rho_min, args.rho_max, args.points)
    rows = []
    all_ok = True
    for rho in rhos:
        problem = SearchProblem(lambda_=args.lambda_, Lambda=float(rho) * args.lambda_, epsilon=args.eps)
        if verify:
            results, _, passed = _verify_one(problem, args.grid_points)
            all_ok &= passed
            rows.append(
                {
                    "rho": float(rho),
                    "n": results["n"],
                    "a0": results["a0"],
                    "cr": results["cr"],
                    "worst_case_ratio": results["worst_case_ratio"],
                    "grid_sweep_ratio": results["grid_sweep_ratio"],
                    "passed": passed,
                }
            )
        else:
            report = optimize(problem)
            rows.append(
                {
                    "rho": float(rho),
                    "n": report.n,
                    "a0": report.a0,
                    "cr": report.cr,
                    "mode": report.mode,
                    "cr_error_bound": report.cr_error_bound,
                    "residual": report.residual,
                }
            )
    _emit_rows(rows, args.format or "csv")
    return 0 if all_ok else 1


def _cmd_mray(args: argparse.Namespace) -> int:
    inputs = {"m": args.m, "a": args.a, "b": args.b, "lambda": args.lambda_, "horizon": args.horizon}
    lo, hi = mrays.feasible_b_interval(args.m, args.a)
    bound_upper = 1.0 + 2.0 * mrays.optimal_cost_coefficient(args.m)
    bound_lower = 1.0 + 2.0 * (args.m - 1.0)
    try:
        params = mrays.RayFamilyParams(m=args.m, a=args.a, b=args.b, lambda_=args.lambda_)
    except mrays.InfeasibleParamsError as exc:
        results = {
            "feasible": False,
            "b_interval": list(exc.interval),
            "bound_upper": bound_upper,
            "bound_lower": bound_lower,
        }
        _emit(_record("mray", inputs, results, {"error": str(exc)}), args.format or "json")
        return 1
    ratio = mrays.mray_worst_ratio(params, args.horizon)
    results = {
        "feasible": True,
        "b_interval": [lo, hi],
        "worst_ratio": ratio,
        "bound_upper": bound_upper,
        "bound_lower": bound_lower,
        "gap_to_bound": bound_upper - ratio,
        "first_turns": mrays.family_strategy(params, min(8, args.horizon)),
    }
    _emit(_record("mray", inputs, results, {}), args.format or "json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linesearch",
        description="Optimal strategies and exact competitive ratios for bounded line search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--lambda", dest="lambda_", type=float, default=1.0,
                       help="lower bound on the target distance (default 1)")
        p.add_argument("--format", choices=("json", "csv"), default=None)

    p_opt = sub.add_parser("optimal", help="compute the optimal strategy and its ratio")
    add_common(p_opt)
    p_opt.add_argument("--Lambda", type=float, default=None,
                       help="upper bound on the target distance")
    p_opt.add_argument("--log2-rho", dest="log2_rho", type=float, default=None,
                       help="give rho = Lambda/lambda as its base-2 logarithm")
    p_opt.add_argument("--eps", type=float, default=1e-9,
                       help="competitive-ratio tolerance (default 1e-9)")
    p_opt.add_argument("--sweep", action="store_true", help="log-spaced batch over rho")
    p_opt.add_argument("--rho-min", type=float, default=None)
    p_opt.add_argument("--rho-max", type=float, default=None)
    p_opt.add_argument("--points", type=int, default=50)
    p_opt.set_defaults(func=_cmd_optimal)

    p_reach = sub.add_parser("reach", help="largest Lambda searchable within a ratio budget")
    add_common(p_reach)
    p_reach.add_argument("--ratio", type=float, required=True,
                         help="competitive ratio budget R, 3 <= R < 9")
    p_reach.set_defaults(func=_cmd_reach)

    p_ver = sub.add_parser("verify", help="cross-check the optimizer against the simulator")
    add_common(p_ver)
    p_ver.add_argument("--Lambda", type=float, default=None)
    p_ver.add_argument("--log2-rho", dest="log2_rho", type=float, default=None)
    p_ver.add_argument("--eps", type=float, default=1e-9)
    p_ver.add_argument("--grid-points", dest="grid_points", type=int, default=100_000)
    p_ver.add_argument("--sweep", action="store_true")
    p_ver.add_argument("--rho-min", type=float, default=None)
    p_ver.add_argument("--rho-max", type=float, default=None)
    p_ver.add_argument("--points", type=int, default=20)
    p_ver.set_defaults(func=_cmd_verify)

    p_mray = sub.add_parser("mray", help="feasibility and worst ratio of an m-ray family member")
    add_common(p_mray)
    p_mray.add_argument("--m", type=int, required=True, help="number of rays, m >= 2")
    p_mray.add_argument("--a", type=float, required=True, help="slope of the family member")
    p_mray.add_argument("--b", type=float, required=True, help="offset of the family member")
    p_mray.add_argument("--horizon", type=int, default=200,
                        help="breakpoint horizon for the ratio supremum (default 200)")
    p_mray.set_defaults(func=_cmd_mray)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
