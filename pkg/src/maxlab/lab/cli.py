"""Command line entry point: ``maxlab run``, ``maxlab region``, ``maxlab list-kinds``."""

import argparse
import sys

from ..errors import AccuracyError, ConfigError, FitError, MaxlabError
from . import svg
from .config import load_config, parse_numbers
from .experiments import KINDS, SCHEMAS, describe, runner
from .report import CONFIG_ERROR, FAIL, INCONCLUSIVE, PASS, STATUS, write_report


def run_config(cfg):
    """Run a validated config, write its reports and return the exit code."""
    try:
        outcome = runner(cfg.kind)(cfg.params, cfg.seed, cfg.threads)
    except (AccuracyError, FitError) as exc:
        write_report(cfg, INCONCLUSIVE, error=str(exc))
        return INCONCLUSIVE
    except (ConfigError, ValueError) as exc:
        write_report(cfg, CONFIG_ERROR, error=str(exc))
        return CONFIG_ERROR
    code = PASS if outcome.passed else FAIL
    write_report(cfg, code, outcome)
    return code


def _cmd_run(args):
    try:
        cfg = load_config(args.config, SCHEMAS)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    if args.output_dir:
        cfg.output_dir = args.output_dir
    code = run_config(cfg)
    print(f"{cfg.name}: {STATUS[code]}")
    return code


def _cmd_region(args):
    try:
        a = parse_numbers(args.a) if args.a else None
        text = svg.plot_region(args.n, a, args.kind, args.case, args.m, args.x3)
    except (MaxlabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(args.out)
    return PASS


def _cmd_list(args):
    for kind in KINDS:
        print(kind)
        if args.verbose:
            for line in describe(kind):
                print(f"    {line}")
    return PASS


def build_parser():
    ap = argparse.ArgumentParser(prog="maxlab", description="Maximal-average laboratory")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run an experiment config")
    r.add_argument("config")
    r.add_argument("--output-dir", default=None, help="override the config's output_dir")
    r.set_defaults(func=_cmd_run)
    g = sub.add_parser("region", help="write an SVG of an exponent region")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--a", default=None, help="comma separated exponents")
    g.add_argument("--kind", default="bilinear", choices=["bilinear", "trilinear-slice", "curve"])
    g.add_argument("--case", default="iii", choices=["i", "ii", "iii"])
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--x3", type=float, default=0.0)
    g.add_argument("--out", default="region.svg")
    g.set_defaults(func=_cmd_region)
    k = sub.add_parser("list-kinds", help="list experiment kinds")
    k.add_argument("-v", "--verbose", action="store_true", help="show parameters")
    k.set_defaults(func=_cmd_list)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
