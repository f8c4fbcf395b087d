"""Command line runner: ``periodet --config checks.toml`` or ``periodet --all``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .catalog import catalog
from .checks import run_check
from .config import CHECK_KINDS, CheckConfig, ConfigError, load


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="periodet", description=__doc__)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="TOML file with [[check]] tables")
    src.add_argument("--all", action="store_true", help="run the built-in catalog")
    ap.add_argument("kinds", nargs="*", choices=[[]] + list(CHECK_KINDS), metavar="KIND",
                    help=f"restrict to these check kinds: {', '.join(CHECK_KINDS)}")
    ap.add_argument("--tol", type=float, help="override every check's tolerance")
    ap.add_argument("--seed", type=int, help="override the seed of randomized suites")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    ap.add_argument("--report", metavar="PATH", help="write the JSON report here (default stdout)")
    ap.add_argument("--no-timing", action="store_true",
                    help="zero the 'seconds' field so reports are byte-identical across runs")
    ap.add_argument("--list", action="store_true", help="list selected checks and exit")
    return ap


def select(args) -> list[CheckConfig]:
    if args.config:
        cfgs = load(args.config)
    else:
        cfgs = catalog()
    if args.kinds:
        cfgs = [c for c in cfgs if c.check in args.kinds]
    if args.tol is not None:
        cfgs = [replace(c, tol=args.tol) for c in cfgs]
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise ConfigError("--seed must fit in an unsigned 64-bit integer")
        cfgs = [replace(c, seed=args.seed) for c in cfgs]
    return cfgs


def _run(item):
    cfg, timing = item
    return run_check(cfg, timing)


def run(cfgs: list[CheckConfig], jobs: int = 1, timing: bool = True) -> list[dict]:
    items = [(c, timing) for c in cfgs]
    if jobs <= 1 or len(items) <= 1:
        return [_run(i) for i in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        # map keeps config order whatever the completion order
        return list(pool.map(_run, items))


def render(reports: list[dict]) -> str:
    return json.dumps(reports, indent=2, sort_keys=False, default=str) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfgs = select(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    if args.list:
        for c in cfgs:
            print(f"{c.check:13s} {c.label}")
        return 0
    reports = run(cfgs, args.jobs, timing=not args.no_timing)
    text = render(reports)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        status = "PASS" if r["pass"] else "FAIL"
        print(f"{status} {r['check']:13s} {r['inputs']['name'] or '-'} ({r['seconds']:.2f}s)",
              file=sys.stderr)
    return 0 if all(r["pass"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
