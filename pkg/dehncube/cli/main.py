"""Compute the cube-of-resolutions spectral sequence of a plat-closed braid.

Examples::

    dehncube --strands 4 --word "s2 s2 s2" --pages --json
    dehncube --strands 4 --word "s2 s2 s2" --aux-unknot
    dehncube --selftest --seed 7

Exit status is 0 on success, 1 for bad input and 2 when an internal
consistency check fails (the witness is written to stderr).
"""
import argparse
import json
import logging
import sys
import time

from dehncube.cli.higher_maps import read_higher_maps
from dehncube.cli.report import build_report, dumps, schema_errors, summary
from dehncube.cli.selftest import run_selftest
from dehncube.common.errors import ConsistencyError, InputError
from dehncube.pipeline import run_pipeline
from dehncube.topology.tangle import parse_braid_word, parse_plat


def build_parser():
    ap = argparse.ArgumentParser(prog="dehncube", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--strands", type=int, default=None,
                    help="Number of strands (even)")
    ap.add_argument("--word", type=str, default="",
                    help="Braid word, tokens 's<k>' or 's<k>^-1' separated by spaces")
    ap.add_argument("--plat", type=str, default="standard",
                    help="'standard', 'a-b,c-d,...' for both ends, or 'cups/caps'")
    ap.add_argument("--mirror", action="store_true",
                    help="Mirror the word before building the cube")
    ap.add_argument("--aux-unknot", action="store_true",
                    help="Add two auxiliary strands forming a split unknot")
    ap.add_argument("--pages", action="store_true",
                    help="Compute every page up to the limit page")
    ap.add_argument("--max-page", type=int, default=None,
                    help="Last page to compute (default 2, or the limit page with --pages)")
    ap.add_argument("--higher-maps", type=str, default=None, metavar="FILE",
                    help="Table of higher differential blocks to add")
    ap.add_argument("--json", action="store_true",
                    help="Write the JSON report to stdout instead of a summary")
    ap.add_argument("--timing", action="store_true",
                    help="Add wall-clock timings to the report")
    ap.add_argument("--selftest", action="store_true",
                    help="Run the randomised self-checks instead of a computation")
    ap.add_argument("--selftest-count", type=int, default=20,
                    help="Random words used by --selftest")
    ap.add_argument("--seed", type=int, default=0,
                    help="Seed for --selftest")
    ap.add_argument("--verbose", action="store_true",
                    help="Progress bars and debug logging on stderr")
    return ap


def _page_limit(args):
    if args.max_page is not None:
        if args.max_page < 1:
            raise InputError(f"--max-page must be at least 1, got {args.max_page}")
        return args.max_page
    return None if args.pages else 2


def run(args, out=None, err=None):
    """Execute one parsed command line; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if args.selftest:
            table = run_selftest(seed=args.seed, count=args.selftest_count, verbose=args.verbose)
            print(table.to_string(index=False), file=out)
            return 0 if table["failures"].sum() == 0 else 2

        if args.strands is None:
            raise InputError("--strands is required")
        word = parse_braid_word(args.word, args.strands)
        plat = parse_plat(args.plat, args.strands)
        max_page = _page_limit(args)
        blocks = read_higher_maps(args.higher_maps) if args.higher_maps else None

        start = time.perf_counter()
        result = run_pipeline(word, plat=plat, mirror=args.mirror, aux_unknot=args.aux_unknot,
                              max_page=max_page, higher_maps=blocks, verbose=args.verbose)
        timing = {"pipeline": time.perf_counter() - start} if args.timing else None
        report = build_report(result, max_page=max_page, higher_maps=args.higher_maps, timing=timing)
        problems = schema_errors(report)
        if problems:
            raise ConsistencyError("Report does not match its schema", {"problems": problems})
    except InputError as e:
        print(f"dehncube: error: {e}", file=err)
        return 1
    except ConsistencyError as e:
        print(f"dehncube: consistency failure: {e}", file=err)
        print(json.dumps({"error": str(e), "witness": e.witness}, sort_keys=True, indent=2, default=str),
              file=err)
        return 2

    print(dumps(report) if args.json else summary(result, report), file=out)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
