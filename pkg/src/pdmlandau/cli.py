"""Command-line interface.

Subcommands:
    spectrum       closed-form levels over a config sweep
    solve          numeric levels over a config sweep
    verify         analytic-vs-numeric cross table; exit 1 on Model-II gate failure
    wavefunction   two-column (rho, R) samples for one state
    heun           evaluate the biconfluent Heun series on a radial range
    f11            evaluate the confluent hypergeometric series 1F1

Tables go to --out (or stdout) as CSV or JSON; status lines go to stderr so
artifact bytes stay deterministic.  All numbers are emitted with 15
significant digits.  Exit codes: 0 success, 1 verify tolerance breach,
2 bad config or parameters.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys

import numpy as np

from .config import RunConfig, load_config
from .errors import PdmLandauError
from .harness import (run_solve, run_spectrum, run_verify, run_wavefunction)
from .specfun import HeunParams, heun_values, kummer_values

__all__ = ["main"]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.15g" % value
    return str(value)


def _json_value(value):
    # floats pass through the same 15-significant-digit filter as CSV
    if isinstance(value, float):
        return float("%.15g" % value)
    return value


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    replacements = {}
    if args.grid_n is not None:
        replacements["grid_n"] = args.grid_n
    if args.rho_max is not None:
        replacements["rho_max"] = args.rho_max
    if args.format is not None:
        replacements["fmt"] = args.format
    if args.out is not None:
        replacements["out"] = args.out
    return dataclasses.replace(config, **replacements) if replacements else config


def _emit(config_dict: dict | None, header: list[str], rows: list[list],
          summary: dict | None, fmt: str, out: str | None) -> None:
    if fmt == "json":
        doc = {}
        if config_dict is not None:
            doc["config"] = {k: _json_value(v) for k, v in config_dict.items()}
        doc["rows"] = [
            {name: _json_value(cell) for name, cell in zip(header, row)}
            for row in rows
        ]
        if summary is not None:
            doc["summary"] = {k: _json_value(v) for k, v in summary.items()}
        text = json.dumps(doc, indent=2) + "\n"
        if out is None:
            sys.stdout.write(text)
        else:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        return
    if out is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows([_format_cell(c) for c in row] for row in rows)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows([_format_cell(c) for c in row] for row in rows)


def _rows_as_table(rows) -> tuple[list[str], list[list]]:
    header = [f.name for f in dataclasses.fields(rows[0])]
    return header, [[getattr(row, name) for name in header] for row in rows]


def cmd_spectrum(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    rows = run_spectrum(config)
    header, table = _rows_as_table(rows)
    _emit(config.as_dict(), header, table, {"rows": len(rows)}, config.fmt, config.out)
    return 0


def cmd_solve(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    rows = run_solve(config)
    header, table = _rows_as_table(rows)
    _emit(config.as_dict(), header, table, {"rows": len(rows)}, config.fmt, config.out)
    return 0


def cmd_verify(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    report = run_verify(config)
    header, table = _rows_as_table(report.rows)
    _emit(config.as_dict(), header, table, report.summary, config.fmt, config.out)
    s = report.summary
    gap = "n/a" if s["max_rel_gap_model2"] is None else "%.3g" % s["max_rel_gap_model2"]
    print(f"verify: {len(report.rows)} rows, {s['model2_rows']} gated, "
          f"max model-2 rel gap {gap}, tolerance {s['tolerance']:g}: "
          f"{'PASS' if report.passed else 'FAIL'}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_wavefunction(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    rho, R = run_wavefunction(config, m=args.m, n=args.n, source=args.source)
    rows = [[float(x), float(y)] for x, y in zip(rho, R)]
    _emit(config.as_dict(), ["rho", "R"], rows, {"rows": len(rows)}, config.fmt, config.out)
    return 0


def cmd_heun(args) -> int:
    hp = HeunParams(alpha=args.alpha, beta=args.beta, gamma=args.gamma, delta=args.delta)
    r = np.linspace(0.0, args.r_max, args.points)
    values = heun_values(hp, r)
    rows = [[float(x), float(v)] for x, v in zip(r, values)]
    _emit(None, ["r", "H_B"], rows, None, args.format or "csv", args.out)
    return 0


def cmd_f11(args) -> int:
    x = np.linspace(0.0, args.x_max, args.points)
    values = kummer_values(args.a, args.b, x)
    rows = [[float(xx), float(v)] for xx, v in zip(x, values)]
    _emit(None, ["x", "M"], rows, None, args.format or "csv", args.out)
    return 0


def _add_output(sub):
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     help="output format (default from config, else csv)")


def _add_common(sub):
    sub.add_argument("--config", required=True, help="path to a key=value run config")
    _add_output(sub)
    sub.add_argument("--grid-n", dest="grid_n", type=int, default=None,
                     help="interior grid points for the numeric solver")
    sub.add_argument("--rho-max", dest="rho_max", type=float, default=None,
                     help="domain end for the numeric solver")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmlandau",
        description="Landau-type spectra of position-dependent-mass neutral "
                    "particles with an electric quadrupole moment")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("spectrum", help="closed-form levels for a sweep")
    _add_common(sub)
    sub.set_defaults(func=cmd_spectrum)

    sub = subs.add_parser("solve", help="numeric levels for a sweep")
    _add_common(sub)
    sub.set_defaults(func=cmd_solve)

    sub = subs.add_parser("verify", help="analytic-vs-numeric comparison report")
    _add_common(sub)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("wavefunction", help="radial eigenfunction samples")
    _add_common(sub)
    sub.add_argument("--m", type=int, default=None, help="magnetic number (default: first of sweep)")
    sub.add_argument("--n", type=int, default=None, help="radial number (default: first of sweep)")
    sub.add_argument("--source", choices=("numeric", "analytic"), default="numeric")
    sub.set_defaults(func=cmd_wavefunction)

    sub = subs.add_parser("heun", help="evaluate the biconfluent Heun series")
    _add_output(sub)
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--gamma", type=float, required=True)
    sub.add_argument("--delta", type=float, required=True)
    sub.add_argument("--r-max", dest="r_max", type=float, default=4.0)
    sub.add_argument("--points", type=int, default=101)
    sub.set_defaults(func=cmd_heun)

    sub = subs.add_parser("f11", help="evaluate the confluent hypergeometric series")
    _add_output(sub)
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--b", type=float, required=True)
    sub.add_argument("--x-max", dest="x_max", type=float, default=4.0)
    sub.add_argument("--points", type=int, default=101)
    sub.set_defaults(func=cmd_f11)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PdmLandauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
