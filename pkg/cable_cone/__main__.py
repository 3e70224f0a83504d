"""Command-line interface to cable_cone."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .errors import CableConeError
from .mapping_cone import SurgerySpec
from .report import (
    EXIT_INPUT_ERROR,
    ComputeRequest,
    run_compute,
    serialize_report,
)
from .settings import AppSettings
from .verify import SUITES, run_verify

_LOGGER = logging.getLogger("cable_cone")


def _parse_window(text: str) -> Tuple[int, int]:
    low, sep, high = text.partition(",")
    if not sep:
        raise argparse.ArgumentTypeError(f"Expected a,b: {text}")

    try:
        return (int(low), int(high))
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"Expected integers a,b: {text}") from err


def _parse_surgery(text: str) -> SurgerySpec:
    try:
        return SurgerySpec.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = argparse.ArgumentParser(prog="cable_cone")
    parser.add_argument(
        "--debug", action="store_true", help="Print DEBUG messages to the console"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    compute_parser = subparsers.add_parser(
        "compute", help="Build, reduce, and standardize one mapping cone"
    )
    knot_group = compute_parser.add_mutually_exclusive_group(required=True)
    knot_group.add_argument("--knot", help="Built-in knot: torus:2,<q> or unknot")
    knot_group.add_argument("--cfk", help="Path to a knot complex file")
    compute_parser.add_argument(
        "--cable-n", type=int, default=1, help="Cable parameter n (default: 1)"
    )
    compute_parser.add_argument(
        "--surgery",
        type=_parse_surgery,
        default=SurgerySpec(),
        help="1 or 1/<p> (default: 1)",
    )
    compute_parser.add_argument(
        "--window", type=_parse_window, help="Tower window a,b (default: minimal)"
    )
    compute_parser.add_argument(
        "--mirror", action="store_true", help="Dualize the input complex first"
    )
    compute_parser.add_argument(
        "--emit", choices=("json", "text"), default="json", help="Report format"
    )
    compute_parser.add_argument(
        "--max-passes",
        type=int,
        default=AppSettings.max_standardize_passes,
        help="Limit on standardization passes",
    )

    verify_parser = subparsers.add_parser("verify", help="Run a verification suite")
    verify_parser.add_argument(
        "suite", help=f"One of {', '.join(SUITES)}, or a path to a suite file"
    )
    verify_parser.add_argument(
        "--jobs", type=int, default=1, help="Number of checks to run at once"
    )

    args = parser.parse_args(argv)

    settings = AppSettings.from_env()
    settings.debug = settings.debug or args.debug

    level = logging.DEBUG if settings.debug else logging.INFO
    logging.basicConfig(level=level)
    _LOGGER.debug(args)

    if args.command == "verify":
        settings.jobs = args.jobs
        try:
            return run_verify(args.suite, settings)
        except ValueError as err:
            _LOGGER.error(err)
            return EXIT_INPUT_ERROR

    settings.max_standardize_passes = args.max_passes
    request = ComputeRequest(
        knot=args.knot,
        cfk_path=Path(args.cfk) if args.cfk else None,
        cable_n=args.cable_n,
        surgery=args.surgery,
        window=args.window,
        mirror=args.mirror,
    )

    try:
        report, exit_code = run_compute(request, settings)
    except (CableConeError, ValueError, OSError) as err:
        _LOGGER.error("%s: %s", err.__class__.__name__, err)
        return EXIT_INPUT_ERROR

    print(serialize_report(report, args.emit))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
