"""``polyalg <command> --config <file> [--seed N] [--mode exact|float] [--out <file>]``"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyalg", description="Exact experiments on arrangement algebras.")
    p.add_argument("command", choices=harness.COMMANDS)
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--mode", choices=("exact", "float"))
    p.add_argument("--out", help="write the JSON report here (default: config 'output', else stdout only)")
    p.add_argument("--workers", type=int, help="process pool size for trials")
    p.add_argument("--write-constants", metavar="PATH", help="oracle-calibrate: write the constants module")
    p.add_argument("--debug", action="store_true", help="assert stored calibration constants at startup")
    p.add_argument("-q", "--quiet", action="store_true", help="no table on stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    overrides = {"seed": args.seed, "mode": args.mode, "workers": args.workers, "write_constants": args.write_constants}
    if args.debug:
        overrides["debug"] = True
    try:
        cfg = harness.load_config(args.config, args.command, overrides)
        report, code = harness.run(cfg)
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = args.out or cfg.get("output")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(harness.dumps(report))
    if not args.quiet:
        sys.stdout.write(harness.render_table(report))
    if not out and args.quiet:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
