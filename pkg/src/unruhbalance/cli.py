"""Command-line front end.

    unruhbalance list
    unruhbalance run <experiment> [--param k=v ...] [--params file.json]
                                  [--grid name=start:stop:count[:log] ...]
                                  [--out path] [--format csv|json]
    unruhbalance check

Exit status: 0 when every check passes, 1 on a failed check or physics
error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .experiments import (
    EXPERIMENTS,
    RunRecord,
    UsageError,
    list_experiments,
    make_config,
    run_experiment,
)
from .params import load_params

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def format_value(v) -> str:
    """Floats as 17 significant digits in scientific notation; everything else via ``str``."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float) or (hasattr(v, "dtype") and getattr(v.dtype, "kind", "") == "f"):
        return f"{float(v):.16e}"
    if v is None:
        return ""
    return str(v)


def render_csv(record: RunRecord) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(record.columns)
    for row in record.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _json_value(v):
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float) and v != v:
        return None
    return v


def _iso(ts: float) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).isoformat()


def render_json(record: RunRecord) -> str:
    config = record.config.to_dict()
    config["provenance"] = {
        "version": record.version,
        "started": _iso(record.started),
        "finished": _iso(record.finished),
    }
    payload = {
        "config": config,
        "rows": [dict(zip(record.columns, map(_json_value, row))) for row in record.rows],
        "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in record.checks],
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unruhbalance", description="Run the detailed-balance experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", help="list experiments")
    run = sub.add_parser("run", help="run one experiment")
    run.add_argument("experiment")
    run.add_argument("--param", action="append", metavar="K=V", help="override a parameter or option")
    run.add_argument("--params", metavar="FILE", help="JSON file with base parameters")
    run.add_argument("--grid", action="append", metavar="SPEC", help="name=start:stop:count[:log] or name=v1,v2")
    run.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_parser("check", help="run every experiment and print a pass/fail table")
    return parser


def _cmd_list(out) -> int:
    width = max(len(name) for name in EXPERIMENTS)
    for name, claim, description in list_experiments():
        out.write(f"{name:<{width}}  {claim}\n{'':<{width}}  {description}\n")
    return EXIT_OK


def _cmd_run(args, out) -> int:
    base = None
    if args.params:
        try:
            base = load_params(args.params)
        except (OSError, ValueError) as err:
            raise UsageError(f"cannot read {args.params}: {err}") from None
    cfg = make_config(
        args.experiment,
        overrides=_parse_params(args.param),
        grids=args.grid or (),
        params_base=base,
        out=args.out,
        fmt=args.format,
    )
    record = run_experiment(cfg)
    text = render_json(record) if cfg.fmt == "json" else render_csv(record)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    for c in record.checks:
        if not c.passed:
            sys.stderr.write(f"FAIL {c.name}: {c.detail}\n")
    return EXIT_OK if record.passed else EXIT_FAIL


def _cmd_check(out) -> int:
    ok = True
    width = max(len(name) for name in EXPERIMENTS)
    for name in EXPERIMENTS:
        record = run_experiment(make_config(name))
        ok &= record.passed
        elapsed = record.finished - record.started
        for c in record.checks:
            status = "pass" if c.passed else "FAIL"
            out.write(f"{status}  {name:<{width}}  {c.name}: {c.detail}  [{elapsed:.2f} s]\n")
    out.write("all checks passed\n" if ok else "some checks FAILED\n")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "list":
            return _cmd_list(out)
        if args.command == "run":
            return _cmd_run(args, out)
        return _cmd_check(out)
    except UsageError as err:
        sys.stderr.write(f"usage error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
