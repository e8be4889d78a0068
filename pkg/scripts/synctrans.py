#!/usr/bin/env python3
"""
Command line for synctrans.

Reads machines in the plain-text format, runs one operation and prints a
text report (or JSON with --json). Exit codes: 0 success, 1 domain error,
2 format error.
"""

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

# Add scripts directory to path for imports
script_dir = Path(__file__).parent
sys.path.insert(0, str(script_dir))

from commands import CommandResult, run_command  # noqa: E402
from commands.signature import GROUPS  # noqa: E402
from utils.config import deep_merge, load_config  # noqa: E402
from utils.logger import configure_logger  # noqa: E402

# CLI flag -> config bound name
BOUND_FLAGS = {
    "depth_bound": "depth",
    "remainder_bound": "remainder",
    "max_k": "max_k",
    "nd_check_length": "nd_check_length",
}

ALPHA_CHOICES = ("file", "canonical", "zero")


def add_common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Options accepted both before and after the verb."""
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="print a JSON report")
    parser.add_argument("--debug", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="log debug messages to stderr")
    parser.add_argument("--depth-bound", type=int, default=default,
                        help="response search depth (default: formula)")
    parser.add_argument("--remainder-bound", type=int, default=default,
                        help="image and inverse remainder length (default: formula)")
    parser.add_argument("--max-k", type=int, default=default,
                        help="largest synchronizing level accepted (default: |Q|^2)")
    parser.add_argument("--nd-check-length", type=int, default=default,
                        help="prime word length for non-deterministic checks")


def add_output_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", help="write the machine to this file")


def add_annotation_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", choices=ALPHA_CHOICES,
                        help="annotation source (default: file if present, else canonical)")
    parser.add_argument("--offset", type=int, default=0,
                        help="constant added to the annotation (a power of the shift)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synctrans",
        allow_abbrev=False,
        description="Strongly synchronizing transducers, their groups and marker automorphisms.",
    )
    add_common_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name: str, help_text: str, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        add_common_options(p, suppress=True)
        if file:
            p.add_argument("file", help="machine file")
        return p

    verb("validate", "parse a machine file and report its kind")
    add_output_option(verb("minimize", "minimal (or initial minimal) form"))
    p = verb("product", "product machine, T then U")
    p.add_argument("other", help="second machine file")
    p.add_argument("--reduce", action="store_true", help="take the core and minimize")
    add_output_option(p)
    add_output_option(verb("invert", "inverse machine"))
    verb("sync", "synchronizing level and core states")
    add_output_option(verb("core", "core of a strongly synchronizing machine"))
    p = verb("image", "image of a state as a reduced antichain of cones")
    p.add_argument("state", help="state name")
    verb("sig", "signature modulo n - 1")
    verb("sigw", "signature in M_n")
    p = verb("sigk", "signature modulo n^k - 1 of an annotated machine")
    p.add_argument("--k", type=int, required=True)
    add_annotation_options(p)
    p = verb("extend", "annotated machine on the alphabet of k-letter blocks")
    p.add_argument("--k", type=int, required=True)
    add_annotation_options(p)
    add_output_option(p)
    p = verb("member", "group membership test")
    p.add_argument("--group", choices=GROUPS, required=True)
    p.add_argument("--r", type=int, default=1)
    p = verb("gen", "the generator T(d, e)", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    add_output_option(p)
    add_output_option(verb("rev", "reversed non-deterministic machine"))
    add_output_option(verb("rec", "deterministic recovery of a non-deterministic machine"))
    add_output_option(verb("revaut", "reverse automorphism"))
    verb("revsig", "signature of the reverse automorphism")
    verb("probe-q1", "compare rev_sig(T) with sig(T^-1)")
    p = verb("apply", "act on an eventually periodic sequence")
    p.add_argument("--seq", required=True, help="\"(u)^-inf . v . (w)^inf @ t\"")
    p.add_argument("--times", type=int, default=1, help="apply this many times")
    add_annotation_options(p)
    p = verb("pi", "action on rotation classes of prime words")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--moved", action="store_true", help="only list classes that move")
    p = verb("marker", "marker automorphism swapping two words", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help="first marker word")
    p.add_argument("--b", required=True, help="second marker word")
    add_output_option(p)
    p = verb("marker-search", "search valid marker pairs", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True, help="marker word length")
    p.add_argument("--count", type=int, default=1)
    p = verb("conveyor", "conveyor-belt automorphism from a JSON description", file=False)
    p.add_argument("--spec", required=True, help="conveyor JSON file")
    p.add_argument("--k-check", type=int, default=4, help="injectivity check run length")
    p.add_argument("--no-membership", action="store_true", help="skip the D_n check")
    add_output_option(p)
    p = verb("lift", "lift a D_n element to the r-rooted space")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--check-depth", type=int, help="verify cylinder bijectivity at this depth")
    add_output_option(p)
    p = verb("suite", "run the acceptance checks", file=False)
    p.add_argument("--check", action="append", help="run only this check (repeatable)")
    p.add_argument("--seed", type=int, help="override suite.seed")
    verb("dot", "Graphviz DOT source")
    return parser


def apply_cli_overrides(config: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    """CLI flags win over config files and environment."""
    bounds = {
        name: getattr(args, flag)
        for flag, name in BOUND_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    override: dict[str, Any] = {"bounds": bounds} if bounds else {}
    if args.debug:
        override["debug"] = True
    return deep_merge(config, override)


def emit(result: CommandResult, as_json: bool) -> None:
    """Print the report; errors go to stderr unless JSON was requested."""
    if as_json:
        print(json.dumps(
            {"exit_code": result.exit_code, "message": result.message, "details": result.details},
            indent=2, sort_keys=True, default=str,
        ))
    elif "error" in result.details:
        print(f"error: {result.message}", file=sys.stderr)
    else:
        print(result.message)


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the synctrans command line."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags, 0 on --help
        return int(e.code or 0)

    install_root = os.environ.get("SYNCTRANS_ROOT", str(script_dir.parent))
    config = apply_cli_overrides(load_config(os.getcwd(), install_root), args)
    logger = configure_logger(config)

    logger.debug(f"synctrans {args.verb} started")
    result = run_command(args.verb, args, config)
    logger.debug(f"synctrans {args.verb} finished with exit code {result.exit_code}")

    emit(result, args.json)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
