"""Exhaustive pruned search for solutions of 3*prod(q-1) = 2*prod(q) + 2.

Solutions n = q1*...*qk (distinct primes >= 5) are found by depth-first
expansion of residual-equation states.  Internal nodes enumerate the next
prime up to the tighter of the finiteness bound and the limit bound; leaf
work is handed to the closed-form endgames.  Every emitted solution is
re-verified against the original equation, independent of the search path
that produced it.

With more than one worker requested, the tree is first expanded
breadth-first into independent subtree tasks which run in worker
processes; results are merged and sorted, so output does not depend on
the worker count.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable

from .arith import PrimeTable, PrimeTableExhausted, build_prime_table, is_prime
from .equation import (
    EquationState,
    Pruned,
    absorb_prime,
    corollary_filter,
    finiteness_bound,
    limit_bound,
    one_prime_solve,
    root_state,
    two_prime_solve,
)

__all__ = [
    "SearchConfig",
    "SearchCounters",
    "Solution",
    "PrimeSource",
    "corollary_filter",
    "max_k_for_limit",
    "search_exact_k",
    "search_up_to_limit",
    "steinerberger_relevance",
]

# Unbounded searches beyond this many prime factors are refused: the subtree
# widths explode and no further solutions are reachable in reasonable time.
MAX_UNBOUNDED_K = 6

_INITIAL_TABLE_LIMIT = 1 << 17
_TABLE_GROWTH = 4


@dataclass
class SearchCounters:
    """Tallies of expanded nodes and prunes, by reason.

    nodes_expanded counts visited states (internal and endgame).  The bound
    counters tick when a branch dies with no admissible next prime; gcd,
    corollary and infeasible count rejected candidate primes; congruence
    counts divisor pairs discarded by the endgame residue filter.
    """

    nodes_expanded: int = 0
    prune_gcd: int = 0
    prune_finiteness: int = 0
    prune_limit: int = 0
    prune_corollary: int = 0
    prune_congruence: int = 0
    prune_infeasible: int = 0

    def merge(self, other: "SearchCounters") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters.

    ``threads`` is the worker process count.  ``epsilon`` is kept for
    compatibility with configs that tune a floating-point prescreen; the
    implementation settles every decision in exact integer arithmetic, so
    the value is never consulted.
    """

    k_min: int = 1
    k_max: int = MAX_UNBOUNDED_K
    limit: int | None = None
    threads: int = 1
    epsilon: float = 1e-9

    def __post_init__(self):
        if self.k_min < 1 or self.k_min > self.k_max:
            raise ValueError(f"need 1 <= k_min <= k_max, got [{self.k_min}, {self.k_max}]")
        if self.threads < 1:
            raise ValueError(f"need threads >= 1, got {self.threads}")
        if self.limit is None and self.k_max > MAX_UNBOUNDED_K:
            raise ValueError(
                f"unbounded search is refused for k > {MAX_UNBOUNDED_K}; pass a limit"
            )
        if self.limit is not None and self.limit < 0:
            raise ValueError(f"limit must be nonnegative, got {self.limit}")


@dataclass(frozen=True)
class Solution:
    """A verified solution n = prod(factors) with k = len(factors)."""

    n: int
    factors: tuple[int, ...]
    k: int

    @classmethod
    def from_factors(cls, factors: tuple[int, ...]) -> "Solution":
        """Build and re-verify a solution; raises ValueError when invalid."""
        if not factors or any(q >= r for q, r in zip(factors, factors[1:])):
            raise ValueError(f"factors must be strictly ascending, got {factors}")
        if factors[0] < 5:
            raise ValueError(f"solution primes are >= 5, got {factors}")
        n = 1
        tot = 1
        for q in factors:
            n *= q
            tot *= q - 1
        if 3 * tot != 2 * n + 2:
            raise ValueError(f"factors {factors} do not satisfy the equation")
        if n % 6 != 5:
            raise ValueError(f"solution must be 5 mod 6, got {n}")
        return cls(n=n, factors=tuple(factors), k=len(factors))


def steinerberger_relevance(s: Solution) -> bool:
    """Whether (4n + 1) / 3 is an integer and prime for this solution."""
    m = 4 * s.n + 1
    return m % 3 == 0 and is_prime(m // 3)


def max_k_for_limit(limit: int) -> int:
    """Largest k whose k smallest admissible primes already fit under limit."""
    table = build_prime_table(512)
    k = 0
    prod = 1
    for p in table.in_range(3, 512):
        prod *= p
        if prod > limit:
            return k
        k += 1
    raise PrimeTableExhausted(512)  # limit beyond any supported search size


class PrimeSource:
    """Lazily grown prime table shared by one search process."""

    def __init__(self, initial_limit: int = _INITIAL_TABLE_LIMIT):
        self._table = build_prime_table(initial_limit)

    @property
    def table(self) -> PrimeTable:
        return self._table

    def ensure(self, needed: int) -> PrimeTable:
        limit = self._table.limit
        if needed > limit:
            while limit < needed:
                limit *= _TABLE_GROWTH
            self._table = build_prime_table(limit)
        return self._table


# ---------------------------------------------------------------------------
# Tree walk
# ---------------------------------------------------------------------------


def _next_prime_bound(
    state: EquationState, limit: int | None, source: PrimeSource
) -> tuple[int, str]:
    while True:
        try:
            hi = finiteness_bound(state, source.table)
            break
        except PrimeTableExhausted as exc:
            source.ensure((exc.needed or source.table.limit) * _TABLE_GROWTH)
    binding = "finiteness"
    if limit is not None:
        lb = limit_bound(state, limit)
        if lb < hi:
            hi, binding = lb, "limit"
    return hi, binding


def _expand_node(
    state: EquationState, limit: int | None, source: PrimeSource, counters: SearchCounters
) -> list[EquationState]:
    counters.nodes_expanded += 1
    hi, binding = _next_prime_bound(state, limit, source)
    lo = state.floor
    if hi <= lo:
        if binding == "limit":
            counters.prune_limit += 1
        else:
            counters.prune_finiteness += 1
        return []
    source.ensure(hi)
    children = []
    for q in source.table.in_range(lo, hi):
        if not corollary_filter(state.prefix, q):
            counters.prune_corollary += 1
            continue
        child = absorb_prime(state, q)
        if isinstance(child, Pruned):
            if child.reason == "gcd":
                counters.prune_gcd += 1
            elif child.reason == "corollary":
                counters.prune_corollary += 1
            else:
                counters.prune_infeasible += 1
            continue
        children.append(child)
    return children


def _solve_endgame(
    state: EquationState,
    limit: int | None,
    counters: SearchCounters,
    emit: Callable[[tuple[int, ...]], None],
) -> None:
    counters.nodes_expanded += 1
    if state.remaining == 1:
        for q in one_prime_solve(state, state.floor, limit):
            emit(state.prefix + (q,))
    else:
        for q, r in two_prime_solve(state, state.floor, limit, counters):
            emit(state.prefix + (q, r))


def _dfs(
    state: EquationState,
    limit: int | None,
    source: PrimeSource,
    counters: SearchCounters,
    emit: Callable[[tuple[int, ...]], None],
) -> None:
    if state.remaining <= 2:
        _solve_endgame(state, limit, counters, emit)
        return
    for child in _expand_node(state, limit, source, counters):
        _dfs(child, limit, source, counters, emit)


# ---------------------------------------------------------------------------
# Parallel driver
# ---------------------------------------------------------------------------

_worker_source: PrimeSource | None = None


def _get_worker_source() -> PrimeSource:
    global _worker_source
    if _worker_source is None:
        _worker_source = PrimeSource()
    return _worker_source


def _subtree_worker(task: tuple[EquationState, int | None]) -> tuple[list[tuple[int, ...]], SearchCounters]:
    state, limit = task
    counters = SearchCounters()
    found: list[tuple[int, ...]] = []
    _dfs(state, limit, _get_worker_source(), counters, found.append)
    return found, counters


def _make_tasks(
    root: EquationState,
    limit: int | None,
    source: PrimeSource,
    counters: SearchCounters,
    want: int,
) -> list[EquationState]:
    """Breadth-first expansion until at least ``want`` independent subtrees."""
    frontier: deque[EquationState] = deque([root])
    while len(frontier) < want:
        state = next((s for s in frontier if s.remaining > 2), None)
        if state is None:
            break
        frontier.remove(state)
        frontier.extend(_expand_node(state, limit, source, counters))
        if not frontier:
            break
    return list(frontier)


def search_exact_k(
    k: int,
    limit: int | None = None,
    config: SearchConfig | None = None,
    counters: SearchCounters | None = None,
) -> list[Solution]:
    """All solutions with exactly k prime factors (and n <= limit if given).

    Unbounded runs are refused for k > 6.  ``counters``, when supplied, is
    updated in place with merged node and prune statistics.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if limit is None and k > MAX_UNBOUNDED_K:
        raise ValueError(
            f"unbounded search is refused for k > {MAX_UNBOUNDED_K}; pass a limit"
        )
    if config is None:
        config = SearchConfig(k_min=k, k_max=k, limit=limit)
    if counters is None:
        counters = SearchCounters()
    threads = config.threads
    source = PrimeSource()
    root = root_state(k)
    found: list[tuple[int, ...]] = []
    if threads == 1:
        _dfs(root, limit, source, counters, found.append)
    else:
        tasks = _make_tasks(root, limit, source, counters, want=4 * threads)
        if tasks:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for sub_found, sub_counters in pool.map(
                    _subtree_worker, [(s, limit) for s in tasks]
                ):
                    found.extend(sub_found)
                    counters.merge(sub_counters)
    solutions = [Solution.from_factors(f) for f in found]
    solutions.sort(key=lambda s: s.n)
    return solutions


def search_up_to_limit(
    limit: int,
    config: SearchConfig | None = None,
    counters: SearchCounters | None = None,
) -> list[Solution]:
    """All solutions n <= limit, across k from config.k_min up to the cap.

    The factor count is capped by the largest k whose smallest possible
    prime product still fits under the limit, so wide k ranges are safe to
    request.
    """
    if config is None:
        config = SearchConfig(k_min=1, k_max=max_k_for_limit(limit) or 1, limit=limit)
    if counters is None:
        counters = SearchCounters()
    k_hi = min(config.k_max, max_k_for_limit(limit))
    out: list[Solution] = []
    for k in range(config.k_min, k_hi + 1):
        out.extend(search_exact_k(k, limit, config, counters))
    out.sort(key=lambda s: s.n)
    return out
