"""Brute-force cross-check path: totient sieve, scan, single-value verdicts.

Deliberately shares no search logic with the solver.  The sieve recomputes
Euler's totient for every index from scratch (vectorized), the scan tests
3*phi(n) == 2*(n+1) directly, and check_single re-derives everything for
one value from its factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arith import factorize, is_prime

__all__ = [
    "TotientTable",
    "CheckResult",
    "SCAN_LIMIT_CAP",
    "totient_sieve",
    "scan_solutions",
    "check_single",
]

# One int64 per index; anything bigger belongs to the solver path.
SCAN_LIMIT_CAP = 200_000_000


@dataclass(frozen=True)
class TotientTable:
    """phi[i] = Euler totient of i, for 0 <= i <= limit."""

    phi: np.ndarray
    limit: int


def totient_sieve(limit: int) -> TotientTable:
    """Tabulate the totient for 1..limit."""
    if limit < 1:
        raise ValueError(f"need limit >= 1, got {limit}")
    if limit > SCAN_LIMIT_CAP:
        raise ValueError(
            f"sieve limit {limit} exceeds {SCAN_LIMIT_CAP}; "
            "use the solver search for ranges this large"
        )
    composite = np.zeros(limit + 1, dtype=bool)
    composite[:2] = True
    for p in range(2, isqrt(limit) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in np.flatnonzero(~composite):
        sl = phi[p::p]
        sl -= sl // p
    return TotientTable(phi=phi, limit=limit)


def scan_solutions(limit: int) -> list[int]:
    """Every n <= limit with phi(n) = (2/3)(n+1), by direct tabulation."""
    table = totient_sieve(limit)
    n = np.arange(table.limit + 1, dtype=np.int64)
    hits = np.flatnonzero(3 * table.phi == 2 * (n + 1))
    return [int(v) for v in hits if v >= 1]


@dataclass(frozen=True)
class CheckResult:
    """Verdict for a single value, derived from its factorization."""

    n: int
    phi: int
    is_solution: bool
    factors: tuple[tuple[int, int], ...]
    square_free: bool
    mod6: int
    relevance: bool


def check_single(n: int) -> CheckResult:
    """Factor n, recompute phi, and test the equation exactly."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    fact = factorize(n)
    phi = fact.phi()
    m = 4 * n + 1
    return CheckResult(
        n=n,
        phi=phi,
        is_solution=3 * phi == 2 * (n + 1),
        factors=fact.factors,
        square_free=fact.is_square_free,
        mod6=n % 6,
        relevance=m % 3 == 0 and is_prime(m // 3),
    )
