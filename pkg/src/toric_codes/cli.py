"""Command line entry point: `toric-codes run|verify|orbits|code|ideal`."""

import argparse
import json
import logging
import sys
import typing as t
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.jobs import JobOutcome, load_job, run_job
from toric_codes.suite import GoldenError, verify_suite

logger = utils.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_SCHEMA = 2
EXIT_BUDGET = 3

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

IDEAL_KINDS = {
    "affine": "affine_ideal",
    "toric": "toric_ideal",
    "cell": "cell_ideal",
    "point": "point_ideal",
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"'{text}' is not a comma separated list of integers"
        ) from None


def _matrix(text: str) -> list[list[int]]:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"'{text}' is not JSON: {e}") from None
    return t.cast(list[list[int]], value)


def _add_budget_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--path", choices=["elimination", "cellular", "both"])
    parser.add_argument("--budget-pairs", type=int, metavar="N")
    parser.add_argument("--budget-points", type=int, metavar="N")
    parser.add_argument("--seed", type=int, help="seed of the sampled soundness check")
    parser.add_argument("--out", type=Path, help="write the result document here")


def _add_variety_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="the characteristic")
    parser.add_argument("--k", type=int, default=1, help="the extension degree")
    grading = parser.add_mutually_exclusive_group(required=True)
    grading.add_argument("--beta", type=_matrix, help="grading matrix as JSON")
    grading.add_argument("--hirzebruch", type=int, metavar="ELL")
    grading.add_argument("--wps", type=_int_list, metavar="W1,W2,...")
    grading.add_argument("--product", type=_int_list, metavar="N1,N2,...")
    parser.add_argument(
        "--B", dest="irrelevant", help="irrelevant monomials, comma separated"
    )
    _add_budget_options(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-codes",
        description="Vanishing ideals of toric varieties over finite fields and "
        "their evaluation codes.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a JSON job file")
    run.add_argument("job", type=Path)
    _add_budget_options(run)

    verify = commands.add_parser("verify", help="run the bundled golden jobs")
    verify.add_argument("--dir", type=Path, help="directory of golden files")
    verify.add_argument("--include-slow", action="store_true")

    orbits = commands.add_parser("orbits", help="list orbit representatives")
    _add_variety_options(orbits)
    orbits.add_argument(
        "--region",
        choices=["affine", "toric", "torus", "irrelevant"],
        default="affine",
    )
    orbits.add_argument("--raw", action="store_true", help="do not merge orbits")

    code = commands.add_parser("code", help="parameters of an evaluation code")
    _add_variety_options(code)
    code.add_argument("--alpha", type=_int_list, required=True)
    code.add_argument(
        "--region", choices=["affine", "toric", "torus"], default="toric"
    )
    code.add_argument("--standard-basis", action="store_true")

    ideal = commands.add_parser("ideal", help="print a reduced Gröbner basis")
    _add_variety_options(ideal)
    ideal.add_argument("--kind", choices=list(IDEAL_KINDS), default="toric")
    ideal.add_argument("--support", type=_int_list, help="1-based, for --kind cell")
    ideal.add_argument("--point", type=_int_list, help="encodings, for --kind point")
    return parser


def job_from_args(args: argparse.Namespace) -> dict[str, t.Any]:
    """Translate the options of `orbits`, `code` and `ideal` into a job mapping."""
    job: dict[str, t.Any] = {"p": args.p, "k": args.k}
    for name in ("beta", "hirzebruch", "wps", "product"):
        if getattr(args, name) is not None:
            job[name] = getattr(args, name)
    if args.irrelevant:
        job["B"] = [m.strip() for m in args.irrelevant.split(",")]
    if args.command == "orbits":
        job.update(task="orbits", region=args.region, raw=args.raw)
    elif args.command == "code":
        job.update(
            task="code",
            alpha=args.alpha,
            region=args.region,
            standard_basis=args.standard_basis,
        )
    else:
        job["task"] = IDEAL_KINDS[args.kind]
        if args.support is not None:
            job["support"] = args.support
        if args.point is not None:
            job["point"] = args.point
    return job


def _apply_options(job: dict[str, t.Any], args: argparse.Namespace) -> None:
    options = job.setdefault("options", {})
    if args.path is not None:
        options["path"] = args.path
    if args.budget_pairs is not None:
        options["max_pairs"] = args.budget_pairs
    if args.budget_points is not None:
        options["max_points"] = args.budget_points
    if args.seed is not None:
        Config.config.verification.seed = args.seed


def _summary(outcome: JobOutcome) -> str:
    document = outcome.document
    lines: list[str] = []
    if "generators" in document:
        lines.extend(document["generators"])
    if "orbits" in document:
        lines.extend(
            f"{tuple(o['rep'])}  support {o['support']}" for o in document["orbits"]
        )
        lines.append(
            f"{document['orbit_count']} orbits in {document['cell_count']} cells"
        )
    if "code" in document:
        n, k, delta = document["code"]["params"]
        lines.append(f"[{n}, {k}, {'?' if delta is None else delta}]")
    failed = [name for name, ok in document.get("verdicts", {}).items() if not ok]
    if failed:
        lines.append(f"failed checks: {', '.join(failed)}")
    return "\n".join(lines)


def install_handler(verbose: int) -> None:
    package_logger = logging.getLogger(utils.PACKAGE_LOGGER_NAME)
    if not any(getattr(h, "_toric_cli", False) for h in package_logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._toric_cli = True  # type: ignore[attr-defined]
        package_logger.addHandler(handler)
    if verbose:
        Config.config.verbosity = "DEBUG" if verbose > 1 else "INFO"


def _execute(args: argparse.Namespace) -> int:
    if args.command == "verify":
        report = verify_suite(args.dir, include_slow=args.include_slow)
        print(report.render())
        return EXIT_OK if report.passed else EXIT_FAILED

    if args.command == "run":
        job = load_job(args.job).echo()
    else:
        job = job_from_args(args)
    _apply_options(job, args)
    outcome = run_job(job)
    if args.command == "run" or args.out is not None:
        text = utils.canonical_json(outcome.document)
        if args.out is not None:
            args.out.write_text(text + "\n")
        else:
            print(text)
    if args.command != "run":
        print(_summary(outcome))
    return EXIT_OK if outcome.passed else EXIT_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit status.

    0 when every check passed, 1 when a check failed, 2 for malformed input and 3 when
    a resource budget was exhausted.
    """
    args = build_parser().parse_args(argv)
    install_handler(args.verbose)
    try:
        return _execute(args)
    except (ValidationError, GoldenError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_SCHEMA
    except utils.BudgetError as e:
        logger.error(f"Budget exhausted: {e}")
        return EXIT_BUDGET
    except utils.ToricError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED
