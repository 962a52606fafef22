"""Command-line entry point: ``infomarket {simulate,sweep,figure,predict,validate,oracle}``.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 resource or
convergence error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import asymptotics, dist
from .errors import ConvergenceError, InfomarketError, ResourceLimitError
from .market import OUTCOME_COLUMNS, REGIMES, MarketConfig, Regime, parse_supply, run_capacitated_trial
from .oracles import (
    OracleReport, brute_force_capacitated, crosscheck_sampling_modes,
    pareto_to_exponential_limit_check, quad_max_moment,
)
from .presets import FIGURE_PRESETS, reproduce_figure
from .sweep import (
    DEFAULT_RHO_GRID, ROW_COLUMNS, SweepSpec, gap_label, parse_gap, rows_to_csv, rows_to_json, run_sweep,
)
from .validate import SUITES, validate
from .welfare import analytic_welfare, gap_from_utilities, welfare_from_utilities
from .parallel import trial_utilities

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_RESOURCE = 0, 1, 2, 3

DEFAULTS = {
    "setting": "uncap", "dist_q": "pareto:1,2", "dist_phi": "pareto:1,2", "n": [100],
    "rho": None, "trials": 2000, "seed": 0, "mode": "upfront", "workers": 1,
    "gaps": ["none:quality", "quality:full"], "normalizer": "theorem", "capacities": None,
    "matrix_cap": 4096,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text):
    return [float(t) for t in str(text).split(",") if t.strip()]


def _int_list(text):
    return [int(float(t)) for t in str(text).split(",") if t.strip()]


def _add_market_flags(p, many=False):
    p.add_argument("--config", type=Path, help="JSON file mirroring a sweep spec; flags override it")
    p.add_argument("--n", type=_int_list if many else int,
                   help="market size" + (" (comma-separated list)" if many else ""))
    p.add_argument("--rho", type=_float_list if many else float,
                   help="weight on the idiosyncratic term" + (" (list)" if many else ""))
    p.add_argument("--setting", choices=("uncap", "cap"))
    p.add_argument("--capacities", type=Path, help="file of item capacities (JSON list or whitespace separated)")
    p.add_argument("--dist-q", dest="dist_q", help="family:params, e.g. pareto:1,2")
    p.add_argument("--dist-phi", dest="dist_phi", help="family:params, e.g. exponential:1,1")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=("upfront", "deferred"))
    p.add_argument("--workers", type=int)


def _add_output_flags(p):
    p.add_argument("--out", type=Path, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infomarket", description="Welfare of information regimes in matching markets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="welfare of each regime for one configuration")
    _add_market_flags(p)
    p.add_argument("--regime", action="append", help="regime to report (repeatable; default all)")
    p.add_argument("--gap", action="append", help="from:to gap to report (repeatable)")
    p.add_argument("--allocation", type=int, metavar="TRIAL",
                   help="emit the per-agent allocation of one trial instead of summaries")
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="gaps over an (n, rho) grid")
    _add_market_flags(p, many=True)
    p.add_argument("--gap", action="append", help="from:to (repeatable; default none:quality and quality:full)")
    p.add_argument("--normalizer", choices=("theorem", "none"))
    _add_output_flags(p)

    p = sub.add_parser("figure", help="rerun a figure preset and compare with its plotted points")
    p.add_argument("preset", choices=sorted(FIGURE_PRESETS))
    p.add_argument("--trials", type=int, help="override the preset's trial counts")
    p.add_argument("--n", type=_int_list, help="override the preset's n values")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    _add_output_flags(p)

    p = sub.add_parser("predict", help="leading-order gap predictions, no simulation")
    _add_market_flags(p, many=True)
    p.add_argument("--gap", action="append")
    _add_output_flags(p)

    p = sub.add_parser("validate", help="run the invariant and oracle suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all", *SUITES))
    _add_output_flags(p)

    p = sub.add_parser("oracle", help="run one independent oracle")
    osub = p.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    o = osub.add_parser("quad", help="closed-form max moment against quadrature")
    o.add_argument("--dist", required=True)
    o.add_argument("--m", type=_int_list, default=[1, 2, 10, 100, 1000])
    o.add_argument("--tol", type=float, default=1e-9)
    _add_output_flags(o)
    o = osub.add_parser("brute", help="exact welfare of a fixed small instance")
    o.add_argument("--instance", type=Path, required=True,
                   help='JSON {"q": [...], "phi": [[...]], "capacities": [...] (optional)}')
    o.add_argument("--rho", type=float, required=True)
    o.add_argument("--regime", action="append")
    _add_output_flags(o)
    o = osub.add_parser("modes", help="upfront vs deferred sampling crosscheck")
    _add_market_flags(o)
    _add_output_flags(o)
    o = osub.add_parser("limit", help="Pareto normalizer with alpha = ln n against ln(n)/lambda")
    o.add_argument("--lam", type=float, default=1.0)
    o.add_argument("--n", type=_int_list, default=[100, 10**4, 10**6])
    o.add_argument("--tolerance", type=float, default=0.1)
    _add_output_flags(o)
    return parser


def _read_capacities(path: Path) -> list:
    text = path.read_text()
    try:
        caps = json.loads(text)
    except json.JSONDecodeError:
        caps = text.replace(",", " ").split()
    return [int(c) for c in caps]


def _settings(args, many: bool) -> dict:
    """Built-in defaults, then the config file, then explicit flags."""
    s = dict(DEFAULTS)
    given = set()
    if getattr(args, "config", None):
        try:
            cfg = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        rename = {"n_grid": "n", "rho_grid": "rho", "sampling_mode": "mode", "base_seed": "seed",
                  "gap": "gaps"}
        for k, v in cfg.items():
            k = rename.get(k, k)
            if k in ("n", "rho") and not isinstance(v, list):
                v = [v]
            if k == "dist_q" or k == "dist_phi":
                v = dist.label(dist.from_dict(v)) if isinstance(v, dict) else v
            s[k] = v
            given.add(k)
    for k in ("setting", "dist_q", "dist_phi", "trials", "seed", "mode", "workers", "normalizer"):
        v = getattr(args, k, None)
        if v is not None:
            s[k] = v
    for k in ("n", "rho"):
        v = getattr(args, k, None)
        if v is not None:
            s[k] = v if isinstance(v, list) else [v]
            given.add(k)
    if getattr(args, "gap", None):
        s["gaps"] = args.gap
    if getattr(args, "capacities", None):
        try:
            s["capacities"] = _read_capacities(args.capacities)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read capacities {args.capacities}: {exc}") from None
    if s["capacities"]:
        s["setting"] = "cap"
        if "n" not in given:
            s["n"] = [sum(s["capacities"])]
    if s["rho"] is None:
        s["rho"] = list(DEFAULT_RHO_GRID) if many else [0.5]
    return s


def _config(s: dict, n: int, rho: float) -> MarketConfig:
    return MarketConfig(
        n=n, rho=rho, supply=parse_supply(s["setting"], s["capacities"]),
        dist_q=dist.parse(s["dist_q"]), dist_phi=dist.parse(s["dist_phi"]),
        sampling_mode=s["mode"], base_seed=s["seed"], matrix_cap=s["matrix_cap"],
    )


def _emit(args, text: str):
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _emit_rows(args, rows, columns, meta=None):
    if args.format == "json":
        _emit(args, rows_to_json(rows, meta))
    else:
        _emit(args, rows_to_csv(rows, columns))


def _single(values, name):
    if len(values) != 1:
        raise UsageError(f"simulate takes one {name}, got {values}")
    return values[0]


def cmd_simulate(args) -> int:
    s = _settings(args, many=False)
    config = _config(s, _single(s["n"], "n"), _single(s["rho"], "rho"))
    if args.allocation is not None:
        if not config.capacitated:
            raise UsageError("--allocation needs the capacitated setting")
        outcomes = run_capacitated_trial(config, args.allocation)
        regimes = [Regime.parse(r) for r in args.regime] if args.regime else REGIMES
        rows = [dict(zip(OUTCOME_COLUMNS, row))
                for r in regimes for row in outcomes[r].rows(args.allocation)]
        _emit_rows(args, rows, OUTCOME_COLUMNS, {"config": config.to_dict()})
        return EXIT_OK
    util = trial_utilities(config, s["trials"], workers=s["workers"])
    est = welfare_from_utilities(config, util)
    regimes = [Regime.parse(r) for r in args.regime] if args.regime else REGIMES
    rows = []
    for r in regimes:
        e = est[r]
        rows.append({"kind": "welfare", "name": r.value, "value": e.mean, "stderr": e.stderr,
                     "trials": e.trials, "stderr_reliable": e.stderr_reliable,
                     "analytic": analytic_welfare(config.supply.kind, r, config)})
    for g in args.gap or []:
        a, b = parse_gap(g)
        e = gap_from_utilities(config, util, a, b)
        rows.append({"kind": "gap", "name": gap_label((a, b)), "value": e.delta,
                     "stderr": e.stderr, "trials": e.trials, "stderr_reliable": e.stderr_reliable,
                     "analytic": None})
    columns = ("kind", "name", "value", "stderr", "trials", "stderr_reliable", "analytic")
    _emit_rows(args, rows, columns, {"config": config.to_dict()})
    return EXIT_OK


def _sweep_spec(s: dict) -> SweepSpec:
    return SweepSpec(
        setting=s["setting"], dist_q=dist.parse(s["dist_q"]), dist_phi=dist.parse(s["dist_phi"]),
        rho_grid=s["rho"], n_grid=s["n"], trials=s["trials"], gaps=s["gaps"],
        normalizer=s["normalizer"], sampling_mode=s["mode"], base_seed=s["seed"],
        capacities=tuple(s["capacities"]) if s["capacities"] else None, matrix_cap=s["matrix_cap"],
    )


def cmd_sweep(args) -> int:
    s = _settings(args, many=True)
    spec = _sweep_spec(s)
    rows = run_sweep(spec, workers=s["workers"])
    _emit_rows(args, rows, ROW_COLUMNS, {"sweep": spec.to_dict()})
    failed = [r for r in rows if r["status"] != "ok"]
    if failed:
        print(f"{len(failed)} rows failed: {failed[0]['status']}", file=sys.stderr)
        return EXIT_RESOURCE if "ResourceLimit" in failed[0]["status"] else EXIT_VALIDATION
    return EXIT_OK


def cmd_figure(args) -> int:
    rows, report = reproduce_figure(args.preset, args.trials, args.workers, args.n, args.seed)
    if args.format == "json":
        body = {"report": report, "rows": json.loads(rows_to_json(rows))["rows"]}
        _emit(args, json.dumps(body, indent=2, sort_keys=True, default=float) + "\n")
    elif report["points"]:
        cols = ("n", "rho", "simulated", "stderr", "reference", "theory", "deviation",
                "simulated_excess")
        _emit(args, rows_to_csv(report["points"], cols))
    else:
        _emit(args, rows_to_csv(rows, ("curve", "rho", "value")))
    for n, ser in report["series"].items():
        print(f"{args.preset} n={n}: max |deviation| {ser['max_abs_deviation']:.4f} over "
              f"{ser['points']} points", file=sys.stderr)
    return EXIT_OK


def cmd_predict(args) -> int:
    s = _settings(args, many=True)
    q, phi = dist.parse(s["dist_q"]), dist.parse(s["dist_phi"])
    rows = []
    for n in s["n"]:
        for rho in s["rho"]:
            for g in s["gaps"]:
                a, b = parse_gap(g)
                p = asymptotics.predict_gap(s["setting"], a, b, q, phi, rho, n)
                row = {"setting": s["setting"], "gap": gap_label((a, b)), "n": n, "rho": rho,
                       **p.to_dict(),
                       "excess_normalizer": asymptotics.excess_normalizer(s["setting"], a, b, q, phi, n)}
                if s["setting"] == "cap" and (a, b) == (Regime.ONLY_QUALITY, Regime.FULL_INFORMATION):
                    bounds = asymptotics.capacitated_gap_bounds(q, phi, rho, n)
                    row.update(lower_bound=bounds.lower, upper_bound=bounds.upper, phi_n=bounds.phi_n)
                rows.append(row)
    cols = ("setting", "gap", "n", "rho", "theorem_id", "leading_value", "normalizer",
            "predicted_gap", "extrapolated", "excess_normalizer", "lower_bound", "upper_bound", "phi_n")
    _emit_rows(args, rows, cols)
    return EXIT_OK


def _emit_reports(args, reports) -> int:
    rows = [r.to_dict() for r in reports]
    cols = ("name", "reference_value", "tested_value", "abs_error", "tolerance", "pass")
    _emit_rows(args, rows, cols)
    failed = [r for r in reports if not r.passed or math.isnan(r.abs_error)]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    for r in failed:
        print(f"FAIL {r.name}: tested {r.tested_value!r} vs {r.reference_value!r} "
              f"(tol {r.tolerance:g})", file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_validate(args) -> int:
    _, reports = validate(args.suite)
    return _emit_reports(args, reports)


def cmd_oracle(args) -> int:
    if args.oracle == "quad":
        spec = dist.parse(args.dist)
        reports = []
        for m in args.m:
            exact = float(dist.exact_max_moment(spec, m))
            quad = quad_max_moment(spec, m, args.tol)
            reports.append(OracleReport.compare(f"{dist.label(spec)} max-of-{m}", quad, exact,
                                                max(args.tol, 1e-9 * abs(quad))))
    elif args.oracle == "brute":
        try:
            inst = json.loads(args.instance.read_text())
            q, phi = np.asarray(inst["q"], float), np.asarray(inst["phi"], float)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"bad instance file {args.instance}: {exc}") from None
        regimes = [Regime.parse(r) for r in args.regime] if args.regime else REGIMES
        rows = [{"regime": r.value,
                 "welfare": brute_force_capacitated(q, phi, args.rho, r, inst.get("capacities"))}
                for r in regimes]
        _emit_rows(args, rows, ("regime", "welfare"))
        return EXIT_OK
    elif args.oracle == "modes":
        s = _settings(args, many=False)
        s["setting"] = "cap"
        config = _config(s, _single(s["n"], "n"), _single(s["rho"], "rho"))
        reports = [crosscheck_sampling_modes(config, s["trials"])]
    else:
        reports = pareto_to_exponential_limit_check(args.lam, args.n, args.tolerance)
    return _emit_reports(args, reports)


COMMANDS = {
    "simulate": cmd_simulate, "sweep": cmd_sweep, "figure": cmd_figure,
    "predict": cmd_predict, "validate": cmd_validate, "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ResourceLimitError, ConvergenceError) as exc:
        print(f"infomarket: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, InfomarketError, ValueError, KeyError) as exc:
        print(f"infomarket: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
