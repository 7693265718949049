"""Command line entry point: ``jmbcp <subcommand> ...``.

Exit codes: 0 success, 1 runtime error, 2 usage error, and with
``test --exit-status`` 3 when the null is rejected.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from . import __version__
from ._accel import backend
from .bootstrap import run_test
from .cusum import DEFAULT_BOUNDARY, run_cusum_test
from .errors import JMBError
from .experiments import (
    method_comparison,
    power_experiment,
    power_grid,
    size_experiment,
    write_power_report,
    write_size_reports,
)
from .io import CsvSchema, load_csv, read_config, scenarios_from_dict

log = logging.getLogger("jmbcp")

DEFAULT_THETAS = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _add_input_args(sp):
    sp.add_argument("--input", "-i", required=True, help="CSV file, one observation per row")
    sp.add_argument("--header", action="store_true", help="skip the first line")
    sp.add_argument("--delimiter", default=",")
    sp.add_argument("--transpose", action="store_true", help="file stores observations as columns")
    sp.add_argument("--alpha", type=float, default=0.05)
    sp.add_argument("--bootstrap", "-B", type=int, default=2000, help="bootstrap replicates")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--json", action="store_true", help="print the result as JSON")
    sp.add_argument("--no-timing", action="store_true", help="omit timing fields")


def _add_sim_args(sp):
    sp.add_argument("--config", "-c", required=True, help="TOML or JSON scenario file")
    sp.add_argument("--out-dir", default=None, help="report directory (default: config out_dir or ./results)")
    sp.add_argument("--reps", type=int, default=None)
    sp.add_argument("--bootstrap", "-B", type=int, default=None)
    sp.add_argument("--seed", type=_seed, default=None)
    sp.add_argument("--boundary", type=int, default=None, help="CUSUM boundary removal")
    sp.add_argument("--no-timing", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jmbcp", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend()})")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="U-statistic change point test on a CSV matrix")
    _add_input_args(t)
    t.add_argument("--kernel", choices=["linear", "sign"], default="linear")
    t.add_argument("--exit-status", action="store_true", help="exit 3 when the null is rejected")

    c = sub.add_parser("cusum", help="CUSUM multiplier bootstrap test on a CSV matrix")
    _add_input_args(c)
    c.add_argument("--boundary", type=int, default=DEFAULT_BOUNDARY)
    c.add_argument("--exit-status", action="store_true")

    for name, helptext in [("simulate-size", "null size experiment"),
                           ("simulate-power", "power curve experiment"),
                           ("compare", "linear-kernel JMB vs CUSUM on shared null datasets")]:
        _add_sim_args(sub.add_parser(name, help=helptext))
    return ap


def _print_result(res: dict, as_json: bool, out):
    if as_json:
        print(json.dumps(res, sort_keys=False), file=out)
        return
    for key, val in res.items():
        if isinstance(val, float):
            val = f"{val:.6g}"
        print(f"{key:>12}: {val}", file=out)


def _cmd_test(args, out) -> int:
    X = load_csv(args.input, CsvSchema(args.header, args.delimiter, args.transpose))
    if args.command == "test":
        res = run_test(X, kernel=args.kernel, alpha=args.alpha, B=args.bootstrap, seed=args.seed)
    else:
        res = run_cusum_test(X, boundary=args.boundary, alpha=args.alpha, B=args.bootstrap, seed=args.seed)
    _print_result(res.to_dict(timing=not args.no_timing), args.json, out)
    if args.exit_status and res.reject:
        return 3
    return 0


def _load_sim(args):
    cfg = read_config(args.config)
    for key in ("reps", "seed", "boundary"):
        if getattr(args, key) is not None:
            cfg[key] = getattr(args, key)
    if args.bootstrap is not None:
        cfg["B"] = args.bootstrap
    extras = {k: cfg.pop(k) for k in ("boundary", "thetas", "ms", "out_dir", "stem") if k in cfg}
    scenarios = scenarios_from_dict(cfg)
    out_dir = args.out_dir or extras.get("out_dir", "results")
    return scenarios, extras, out_dir


def _cmd_size(args, out) -> int:
    scenarios, extras, out_dir = _load_sim(args)
    boundary = int(extras.get("boundary", DEFAULT_BOUNDARY))
    reports = [size_experiment(s, boundary=boundary) for s in scenarios]
    paths = write_size_reports(reports, out_dir, extras.get("stem", "size"), timing=not args.no_timing)
    for r in reports:
        print(f"{r.scenario_id}: uniform_error_full={r.uniform_error_full:.4f} "
              f"uniform_error_01={r.uniform_error_01:.4f}", file=out)
    for p in paths:
        print(f"wrote {p}", file=out)
    return 0


def _cmd_power(args, out) -> int:
    scenarios, extras, out_dir = _load_sim(args)
    boundary = int(extras.get("boundary", DEFAULT_BOUNDARY))
    thetas = extras.get("thetas", DEFAULT_THETAS)
    stem = extras.get("stem", "power")
    for s in scenarios:
        ms = extras.get("ms", [s.n // 10, s.n // 2])
        report = power_experiment(power_grid(s, thetas, ms), boundary=boundary)
        name = f"{stem}_{s.noise.kind}_{s.cov.label}_{s.kernel}"
        paths = write_power_report(report, out_dir, name, timing=not args.no_timing)
        for t, m, rate in report.grid:
            print(f"{name}: theta_max={t:g} m={m} rejection_rate={rate:.3f}", file=out)
        for p in paths:
            print(f"wrote {p}", file=out)
    return 0


def _cmd_compare(args, out) -> int:
    scenarios, extras, out_dir = _load_sim(args)
    boundary = int(extras.get("boundary", DEFAULT_BOUNDARY))
    reports = []
    seen = set()
    for s in scenarios:
        s = replace(s, kernel="linear")
        if s in seen:
            continue
        seen.add(s)
        jmb, cus = method_comparison(s, boundary=boundary)
        reports += [jmb, cus]
        for r in (jmb, cus):
            print(f"{r.scenario_id}: uniform_error_full={r.uniform_error_full:.4f} "
                  f"uniform_error_01={r.uniform_error_01:.4f}", file=out)
    for p in write_size_reports(reports, out_dir, extras.get("stem", "compare"), timing=not args.no_timing):
        print(f"wrote {p}", file=out)
    return 0


_COMMANDS = {
    "test": _cmd_test,
    "cusum": _cmd_test,
    "simulate-size": _cmd_size,
    "simulate-power": _cmd_power,
    "compare": _cmd_compare,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except (JMBError, OSError) as exc:
        print(f"jmbcp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
