"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import KEYS, RunConfig, parse_value, read_config
from .errors import DomainError, NumericalError
from .noise import NoiseModel
from .protocols import blind_overhead, optimize_strategy, run_blind_topped, run_innsbruck, run_standard
from .regimes import maximal_fidelity, purification_regime
from .states import WernerParams
from .validation import equivalence_report

COLUMNS = {
    "regime": ["level", "min_fidelity", "max_fidelity", "max_fidelity_pumping"],
    "standard": ["level", "resources", "fidelity", "elapsed"],
    "pump-sweep": ["coherence_time", "error_rate", "max_level", "fidelity", "steps", "bound_level", "bound_fidelity"],
    "blind": ["M", "L", "m", "p_suc", "overhead", "distance_gain"],
    "oracle-check": ["map", "cases", "max_deviation", "worst_case"],
}


class OracleMismatch(Exception):
    pass


def _pmap(fn, items, jobs):
    # results come back in input order whatever the completion order
    if jobs <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _regime_row(args):
    level, tm, m, pump_f = args
    r = purification_regime(level, tm, m, pump_f)
    return {"level": level, "min_fidelity": r.min_fidelity, "max_fidelity": r.max_fidelity,
            "max_fidelity_pumping": r.max_fidelity_pumping}


def cmd_regime(cfg, seed=0):
    tm, m = cfg.time(), cfg.noise()
    items = [(level, tm, m, cfg["regime.pump_f"]) for level in range(1, cfg["regime.levels"] + 1)]
    return _pmap(_regime_row, items, cfg["sweep.jobs"])


def cmd_standard(cfg, seed=0):
    spec = cfg.protocol()
    if spec.kind == "blind_topped":
        reports, overhead = run_blind_topped(spec, cfg.time(), cfg.noise())
        print(f"blind overhead {overhead:.9g}", file=sys.stderr)
    else:
        runner = run_standard if spec.kind == "standard" else run_innsbruck
        reports = runner(spec, cfg.time(), cfg.noise())
    return [{"level": r.level, "resources": r.resources, "fidelity": r.fidelity, "elapsed": r.elapsed}
            for r in reports]


def fixed_point_bound(tm, m, level_cap):
    """Highest level (up to ``level_cap``) whose purification regime is non-empty, and its limit fidelity."""
    level, F = 0, None
    for l in range(1, level_cap + 1):
        f = maximal_fidelity(tm.signal_time(l) + tm.gate_time, m)
        if f is None:
            break
        level, F = l, f
    return level, F


def _sweep_row(args):
    coherence_time, error, tm, F0, min_f, cap = args
    m = NoiseModel.from_error_rate(error, coherence_time)
    s = optimize_strategy(tm, m, WernerParams.from_fidelity(F0), min_f or None, level_cap=cap)
    bound_level, bound_F = fixed_point_bound(tm, m, cap)
    return {"coherence_time": coherence_time, "error_rate": error, "max_level": s.max_level,
            "fidelity": s.fidelity, "steps": "-".join(map(str, s.steps)),
            "bound_level": bound_level, "bound_fidelity": bound_F}


def cmd_pump_sweep(cfg, seed=0):
    tm = cfg.time()
    items = [(ct, e, tm, cfg["protocol.initial_f"], cfg["sweep.min_fidelity"], cfg["sweep.level_cap"])
             for ct in cfg["sweep.coherence_times"] for e in cfg["sweep.error_rates"]]
    return _pmap(_sweep_row, items, cfg["sweep.jobs"])


def cmd_blind(cfg, seed=0):
    M, L = cfg["blind.M"], cfg["blind.L"]
    rows = []
    for p in cfg["blind.p_suc"]:
        for blind in cfg["blind.m"]:
            overhead, gain = blind_overhead(M, L, blind, p)
            rows.append({"M": M, "L": L, "m": blind, "p_suc": p, "overhead": overhead, "distance_gain": gain})
    return rows


def cmd_oracle_check(cfg, seed=0):
    checks = equivalence_report(seed, cfg["oracle.cases"])
    rows = [{"map": c.name, "cases": c.cases, "max_deviation": c.max_deviation, "worst_case": c.worst_case}
            for c in checks]
    bad = [c for c in checks if not c.max_deviation < cfg["oracle.tol"]]
    if bad:
        detail = ", ".join(f"{c.name} case {c.worst_case} (deviation {c.max_deviation:.3g})" for c in bad)
        raise OracleMismatch(f"oracle mismatch with seed {seed}: {detail}", rows)
    return rows


COMMANDS = {
    "regime": cmd_regime,
    "standard": cmd_standard,
    "pump-sweep": cmd_pump_sweep,
    "blind": cmd_blind,
    "oracle-check": cmd_oracle_check,
}


def _cell(v):
    if isinstance(v, float):
        return float(f"{v:.9g}")
    return v


def format_rows(rows, columns, fmt, params):
    rows = [{c: _cell(r[c]) for c in columns} for r in rows]
    if fmt == "json":
        return json.dumps({"params": params, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r[c] is None else (f"{r[c]:.9g}" if isinstance(r[c], float) else r[c]) for c in columns])
    return buf.getvalue()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--output", help="write the table here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    for key, (_, default, text) in KEYS.items():
        common.add_argument(f"--{key}", dest=key, metavar="VALUE", default=None,
                            help=f"{text} (default {default})")
    parser = argparse.ArgumentParser(prog="repeatersim", description="Noisy quantum repeater tables.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    ns = vars(args)
    try:
        file_values = read_config(args.config) if args.config else {}
        overrides = {k: parse_value(k, ns[k]) for k in KEYS if ns.get(k) is not None}
        cfg = RunConfig.build(file_values, overrides)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    code = 0
    try:
        rows = COMMANDS[args.command](cfg, args.seed)
    except OracleMismatch as exc:
        message, rows = exc.args
        print(message, file=sys.stderr)
        code = 3
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2

    params = dict(cfg.as_params(), command=args.command, seed=args.seed)
    text = format_rows(rows, COLUMNS[args.command], args.format, params)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
