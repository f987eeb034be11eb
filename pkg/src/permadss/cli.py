"""Command-line front door: eval, sweep, validate, calibrate, serve.

Exit codes: 0 success, 1 domain error (range, parse, failed calibration),
2 usage error.  Data goes to stdout, diagnostics to stderr, so pipelines
stay clean.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import FuzzyError
from .fistext import parse_fis
from .permanence import (
    PermanenceInput,
    build_permanence_fis,
    check_calibration,
    evaluate_permanence,
)
from .surface import export_grid, sweep

__all__ = ["main", "console_main"]


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permadss",
        description="Fuzzy decision support for market-permanence scoring of generics labs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="score one lab situation")
    p_eval.add_argument("--scenario", required=True, help="stable or growth")
    p_eval.add_argument("--npv", required=True, type=float, help="expected NPV in euros")
    p_eval.add_argument("--gen", required=True, type=float, help="number of generics in portfolio")
    p_eval.add_argument("--divers", required=True, type=float, help="diversification score, 0-5")
    p_eval.add_argument("--json", action="store_true", help="emit the full trace as JSON")

    p_sweep = sub.add_parser("sweep", help="export a response surface")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--fix", required=True, metavar="VAR=VAL",
                         help="fixed variable, e.g. NPV=20e6")
    p_sweep.add_argument("--steps", type=int, default=21)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", help="output path (default: stdout)")

    p_val = sub.add_parser("validate", help="parse a model file and report diagnostics")
    p_val.add_argument("file", help="path to a .fis file")

    p_cal = sub.add_parser("calibrate", help="run the calibration anchors and print the report")
    p_cal.add_argument("--steps", type=int, default=21)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--addr", default="127.0.0.1:8000", metavar="HOST:PORT")
    return parser


def _cmd_eval(args) -> int:
    result = evaluate_permanence(
        args.scenario, PermanenceInput(args.npv, args.gen, args.divers)
    )
    if args.json:
        fis = build_permanence_fis(args.scenario)
        doc = {
            "scenario": args.scenario,
            "inputs": {"npv": args.npv, "gen": args.gen, "divers": args.divers},
            "incentive": result.output,
            "firing": [
                {"rule": i, "strength": s, "consequent": fis.rules[i].consequent[1]}
                for i, s in enumerate(result.firing)
                if s > 0.0
            ],
        }
        print(json.dumps(doc))
    else:
        print(result.output)
    return 0


def _cmd_sweep(args) -> int:
    var, sep, raw = args.fix.partition("=")
    if not sep:
        raise FuzzyError(f"--fix expects VAR=VAL, got {args.fix!r}")
    try:
        value = float(raw)
    except ValueError:
        raise FuzzyError(f"--fix value {raw!r} is not a number") from None
    fis = build_permanence_fis(args.scenario)
    if var not in fis.input_names:
        raise FuzzyError(f"unknown variable {var!r}; inputs are {list(fis.input_names)}")
    axes = [n for n in fis.input_names if n != var]
    grid = sweep(fis, (var, value), axes[0], axes[1], args.steps)
    payload = export_grid(grid, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def _cmd_validate(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FuzzyError(f"cannot read {args.file}: {exc}") from None
    fis = parse_fis(text)
    n_vars = len(fis.inputs) + 1
    print(f"ok: {fis.name}: {len(fis.rules)} rules, {n_vars} variables")
    return 0


def _cmd_calibrate(args) -> int:
    report = check_calibration(steps=args.steps)
    for line in report.lines():
        print(line)
    if report.ok:
        print("all anchors pass")
        return 0
    failed = sum(1 for a in report.anchors if not a.passed)
    print(f"{failed} anchor(s) failed", file=sys.stderr)
    return 1


def _cmd_serve(args) -> int:
    host, sep, port = args.addr.rpartition(":")
    if not sep or not port.isdigit():
        raise FuzzyError(f"--addr expects HOST:PORT, got {args.addr!r}")
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port))
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "calibrate": _cmd_calibrate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except FuzzyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())
