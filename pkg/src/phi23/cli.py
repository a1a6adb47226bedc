"""Command line front end: search (solver), scan (oracle), check (verdict).

Exit codes: 0 success, 1 check verdict negative, 2 usage error, 3 factoring
gave up.  Solutions are printed only after a search completes, so an
interrupted run never emits a partial result.
"""

from __future__ import annotations

import argparse
import decimal
import json
import os
import sys
import time
from dataclasses import dataclass

from .arith import FactoringError
from .oracle import SCAN_LIMIT_CAP, check_single, scan_solutions
from .search import (
    MAX_UNBOUNDED_K,
    SearchConfig,
    SearchCounters,
    max_k_for_limit,
    search_exact_k,
    search_up_to_limit,
    steinerberger_relevance,
)

__all__ = ["RunReport", "main", "run"]


@dataclass
class RunReport:
    """Summary of one search invocation for the --stats output.

    Holds the solution list itself so the report can never drift from
    what was printed; the emitted report carries the count.
    """

    command: str
    config: dict
    solutions: list
    counters: SearchCounters
    wall_time_sec: float
    threads: int

    def as_json(self) -> dict:
        return {
            "report": {
                "command": self.command,
                **self.config,
                "threads": self.threads,
                "solutions": len(self.solutions),
                "wall_time_sec": round(self.wall_time_sec, 6),
                "counters": self.counters.as_dict(),
            }
        }

    def text_lines(self) -> list[str]:
        cfg = " ".join(f"{k}={v}" for k, v in self.config.items())
        counts = " ".join(f"{k}={v}" for k, v in self.counters.as_dict().items())
        return [
            f"# {self.command} {cfg} threads={self.threads} "
            f"solutions={len(self.solutions)} wall_time_sec={self.wall_time_sec:.3f}",
            f"# {counts}",
        ]


def _parse_count(text: str) -> int:
    """Exact integer from plain or scientific notation; 1e14 stays exact."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = decimal.Decimal(text)
    except decimal.InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _solution_line(n: int, factors: tuple[int, ...], relevance: bool, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {"n": n, "k": len(factors), "factors": list(factors), "relevance": relevance}
        )
    joined = ",".join(str(f) for f in factors)
    return f"n={n} k={len(factors)} factors=[{joined}] relevance={'yes' if relevance else 'no'}"


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_search(args: argparse.Namespace) -> int:
    limit = args.limit
    if args.k is not None and (args.k_min is not None or args.k_max is not None):
        return _usage_error("--k cannot be combined with --k-min/--k-max")
    if args.k is not None:
        k_min = k_max = args.k
    else:
        k_min = args.k_min if args.k_min is not None else 1
        if args.k_max is not None:
            k_max = args.k_max
        elif limit is not None:
            k_max = max(max_k_for_limit(limit), 1)
        else:
            k_max = MAX_UNBOUNDED_K
    if limit is None and k_max > MAX_UNBOUNDED_K:
        return _usage_error(
            f"unbounded search supports k <= {MAX_UNBOUNDED_K}; pass --limit to go further"
        )
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    try:
        config = SearchConfig(k_min=k_min, k_max=k_max, limit=limit, threads=threads)
    except ValueError as exc:
        return _usage_error(str(exc))

    counters = SearchCounters()
    started = time.monotonic()
    if limit is not None:
        solutions = search_up_to_limit(limit, config, counters)
    else:
        solutions = []
        for k in range(k_min, k_max + 1):
            solutions.extend(search_exact_k(k, None, config, counters))
        solutions.sort(key=lambda s: s.n)
    elapsed = time.monotonic() - started

    for sol in solutions:
        print(_solution_line(sol.n, sol.factors, steinerberger_relevance(sol), args.format))
    if args.stats:
        report = RunReport(
            command="search",
            config={"k_min": k_min, "k_max": k_max, "limit": limit},
            solutions=solutions,
            counters=counters,
            wall_time_sec=elapsed,
            threads=threads,
        )
        if args.format == "json":
            print(json.dumps(report.as_json()))
        else:
            for line in report.text_lines():
                print(line)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    if args.limit > SCAN_LIMIT_CAP:
        return _usage_error(
            f"scan limit capped at {SCAN_LIMIT_CAP} (one word per index); "
            "use 'search --limit' beyond that"
        )
    for n in scan_solutions(args.limit):
        res = check_single(n)
        factors = tuple(p for p, e in res.factors for _ in range(e))
        print(_solution_line(n, factors, res.relevance, args.format))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    if args.n < 1:
        return _usage_error(f"need n >= 1, got {args.n}")
    res = check_single(args.n)
    if res.factors:
        shown = " * ".join(
            str(p) if e == 1 else f"{p}^{e}" for p, e in res.factors
        )
        print(f"n = {res.n} = {shown}")
    else:
        print(f"n = {res.n}")
    print(f"phi(n) = {res.phi}")
    print(f"solution: {'yes' if res.is_solution else 'no'}")
    print(f"square-free: {'yes' if res.square_free else 'no'}")
    print(f"n mod 6 = {res.mod6}")
    m = 4 * res.n + 1
    if m % 3 != 0:
        print("relevance: no ((4n+1)/3 is not an integer)")
    elif res.relevance:
        print(f"relevance: yes ((4n+1)/3 = {m // 3} is prime)")
    else:
        print(f"relevance: no ((4n+1)/3 = {m // 3} is composite)")
    return 0 if res.is_solution else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phi23",
        description="Find every n with phi(n) = (2/3)(n+1): "
        "exhaustive pruned search plus a brute-force cross-check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_search = sub.add_parser("search", help="run the pruned solver")
    p_search.add_argument("--k", type=_positive_int, help="exact number of prime factors")
    p_search.add_argument("--k-min", type=_positive_int, help="smallest k (default 1)")
    p_search.add_argument("--k-max", type=_positive_int, help="largest k")
    p_search.add_argument(
        "--limit",
        type=_parse_count,
        help="only report n <= LIMIT (accepts 1e14 style); required for k > 6",
    )
    p_search.add_argument(
        "--threads", type=_positive_int, help="worker processes (default: all cores)"
    )
    p_search.add_argument("--format", choices=("text", "json"), default="text")
    p_search.add_argument("--stats", action="store_true", help="append a run report")
    p_search.set_defaults(func=cmd_search)

    p_scan = sub.add_parser("scan", help="brute-force totient scan (oracle)")
    p_scan.add_argument("--limit", type=_parse_count, required=True)
    p_scan.add_argument("--format", choices=("text", "json"), default="text")
    p_scan.set_defaults(func=cmd_scan)

    p_check = sub.add_parser("check", help="verdict for a single n")
    p_check.add_argument("n", type=_parse_count)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except FactoringError as exc:
        print(f"error: {exc}; retry with a larger factoring budget", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main())
