"""Argument parsing, dispatch and exit codes for ``embedlab``.

Examples:
  embedlab space --n 3 --format json
  embedlab roundness --q 1 --n-from 3 --n-to 100 --format csv
  embedlab free-norm --space M --n 3 --molecule '{"weights": {"1": "1/2", "root": "-1/2"}}'
  embedlab embed-search --space M --n 3 --target l1 --restarts 50 --iters 2000 --seed 0
  embedlab witness --n 5 --A 1,2 --B 3,4
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from embedlab import __version__
from embedlab.common.config import VERBOSE_ENV
from embedlab.common.console import log
from embedlab.common.errors import EmbedlabError, UsageError
from embedlab.common.rationals import format_rational, parse_rational

from .commands import COMMANDS
from .output import FORMATS, RunReport, emit

# Exit code for a missing input file (treated as a validation failure).
EXIT_MISSING_FILE = 2


class EmbedlabArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns the exit code."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Flag value types
# ---------------------------------------------------------------------------


def rational(text: str) -> Fraction:
    return parse_rational(text)


def int_list(text: str) -> tuple[int, ...]:
    """``1,2,5`` -> (1, 2, 5)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty list")
    return tuple(int(p) for p in parts)


def json_object(text: str) -> dict:
    value = json.loads(text)
    if not isinstance(value, dict):
        raise ValueError("expected a JSON object")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("must be >= 1")
    return value


def nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError("must be >= 0")
    return value


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    common = EmbedlabArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    common.add_argument(
        "--verbose", action="store_true", help="Tagged diagnostics on stderr"
    )
    common.add_argument(
        "--max-n",
        type=positive_int,
        default=None,
        help="Cap on the truncation level for this run (overrides EMBEDLAB_MAX_N)",
    )
    return common


def _space_flags() -> argparse.ArgumentParser:
    space = EmbedlabArgumentParser(add_help=False)
    space.add_argument("--space", choices=("M", "N0"), default="M", help="Which space to truncate")
    space.add_argument("--n", type=nonnegative_int, default=None, help="Truncation level")
    space.add_argument(
        "--space-file",
        default=None,
        metavar="PATH",
        help="Load the space from a JSON document written by `embedlab space`",
    )
    return space


def build_parser() -> EmbedlabArgumentParser:
    parser = EmbedlabArgumentParser(
        prog="embedlab",
        description="Metric-embedding workbench: truncations of M, roundness bounds, "
        "free norms, embedding search and witnesses",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n", 2)[2],
    )
    parser.add_argument("--version", action="version", version=f"embedlab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    common = _common_flags()
    space = _space_flags()

    def add(name: str, help_text: str, with_space: bool = False) -> argparse.ArgumentParser:
        parents = [common, space] if with_space else [common]
        return sub.add_parser(name, help=help_text, parents=parents)

    add("space", "Points and distance matrix of a truncation", with_space=True)
    add("dist-matrix", "Pairwise distances checked against BFS and the metric axioms", True)

    p = add("roundness", "Table of certified distortion lower bounds")
    p.add_argument("--q", type=rational, default=Fraction(1))
    p.add_argument("--n-from", type=int, default=3)
    p.add_argument("--n-to", type=int, required=True)

    p = add("deficit", "Evaluate the roundness certificate on M_n", with_space=True)
    p.add_argument("--q", type=rational, default=Fraction(1))
    p.add_argument("--cert", choices=("paper",), default="paper")
    p.add_argument("--indices", type=int_list, default=None, help="Integers to use, e.g. 1,3,4")

    p = add("threshold", "Smallest n whose certified bound exceeds a target")
    p.add_argument("--target", type=rational, required=True)
    p.add_argument("--q", type=rational, default=Fraction(1))

    p = add("free-norm", "Exact Lipschitz-free norm of a molecule", with_space=True)
    p.add_argument("--molecule", type=json_object, default=None)
    p.add_argument("--molecule-file", default=None, metavar="PATH")

    add("check-isometry", "||delta_x - delta_y|| = d(x, y) for every pair", with_space=True)

    p = add("check-n0-l1", "Free norm over N0 equals the l1 coefficient norm")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--count", type=positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("bijection-constants", "Lipschitz constants of M_n -> (N0, rho)")
    p.add_argument("--n", type=int, required=True)

    p = add("embed-search", "Search for a low-distortion embedding", with_space=True)
    p.add_argument("--target", choices=("l1", "l2", "linf"), default="l1")
    p.add_argument("--dim", type=positive_int, default=None, help="Default: 2 x |points|")
    p.add_argument("--restarts", type=positive_int, default=10)
    p.add_argument("--iters", type=positive_int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=positive_int, default=1)
    p.add_argument("--no-baseline", action="store_true", help="Start every restart at random")

    p = add("witness", "Separating coordinates for disjoint pairs of 3rd-floor points")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--A", type=int_list, default=None)
    p.add_argument("--B", type=int_list, default=None)
    p.add_argument("--sequence", type=int_list, default=None)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--D", type=rational, default=None, help="Default: C2 of the embedding")
    p.add_argument("--embedding", default=None, metavar="PATH")

    p = add("perturb-bound", "Constants after moving every image point by eta")
    p.add_argument("--c1", type=rational, required=True)
    p.add_argument("--c2", type=rational, required=True)
    p.add_argument("--eta", type=rational, required=True)
    p.add_argument("--min-distance", type=rational, default=Fraction(1))

    p = add("epsilon", "Admissible perturbation size for a given D < 2")
    p.add_argument("--D", type=rational, required=True)

    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_GLOBAL_KEYS = ("subcommand", "format", "verbose")


def _echo(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, tuple):
        return list(value)
    return value


@dataclass
class CommandRequest:
    subcommand: str
    options: dict[str, Any] = field(default_factory=dict)
    fmt: str = "json"
    verbose: bool = False

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> CommandRequest:
        values = vars(args)
        return cls(
            subcommand=values["subcommand"],
            options={k: v for k, v in values.items() if k not in _GLOBAL_KEYS},
            fmt=values.get("format", "json"),
            verbose=bool(values.get("verbose")),
        )


def dispatch(request: CommandRequest) -> RunReport:
    handler = COMMANDS.get(request.subcommand)
    if handler is None:
        raise UsageError(f"Unknown subcommand: {request.subcommand}")
    if request.fmt not in FORMATS:
        raise UsageError(f"Unknown output format: {request.fmt}")

    started = time.perf_counter()
    output = handler(request.options)
    wall_time_ms = (time.perf_counter() - started) * 1000.0
    log("CLI", f"{request.subcommand} finished in {wall_time_ms:.1f} ms (exit {output.exit_code})")

    return RunReport(
        subcommand=request.subcommand,
        inputs={k: _echo(v) for k, v in request.options.items()},
        results=output.results,
        rows=output.rows,
        wall_time_ms=wall_time_ms,
        exit_code=output.exit_code,
    )


@contextmanager
def _verbosity(enabled: bool) -> Iterator[None]:
    if not enabled:
        yield
        return
    previous = os.environ.get(VERBOSE_ENV)
    os.environ[VERBOSE_ENV] = "true"
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop(VERBOSE_ENV, None)
        else:
            os.environ[VERBOSE_ENV] = previous


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help / --version
        return int(e.code or 0)

    request = CommandRequest.from_namespace(args)
    try:
        with _verbosity(request.verbose):
            report = dispatch(request)
    except EmbedlabError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_MISSING_FILE

    sys.stdout.write(emit(report, request.fmt))
    return report.exit_code


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
