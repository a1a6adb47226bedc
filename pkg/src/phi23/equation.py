"""Residual-equation states and the pruning/endgame algebra built on them.

A candidate n is a product of distinct primes 5 <= q1 < q2 < ... < qk and
must satisfy 3*prod(qi - 1) = 2*prod(qi) + 2.  Absorbing a chosen prefix of
primes leaves a residual equation

    alpha * prod(q - 1 for remaining q) = beta * prod(remaining q) + gamma

normalized so gcd(alpha, beta) = 1.  The search walks these states; this
module owns the state transition (absorb_prime), the two upper bounds on
the next prime (finiteness_bound, limit_bound) and the closed-form endgames
for one and two remaining primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import (
    Factorization,
    FactoringError,
    PrimeTable,
    PrimeTableExhausted,
    factorize,
    integer_root,
    is_prime,
)

__all__ = [
    "EquationState",
    "Pruned",
    "FactorPair",
    "EndgameParams",
    "BranchFactoringError",
    "root_state",
    "corollary_filter",
    "absorb_prime",
    "finiteness_bound",
    "limit_bound",
    "divisor_pairs",
    "endgame_params",
    "one_prime_solve",
    "two_prime_solve",
]

ROOT_ALPHA = 3
ROOT_BETA = 2
ROOT_GAMMA = 2


class BranchFactoringError(FactoringError):
    """Factoring gave up inside an endgame; carries the branch for retry."""

    def __init__(self, target: int, prefix: tuple[int, ...]):
        self.prefix = prefix
        Exception.__init__(self, target, prefix)
        self.n = target
        self.target = target

    def __str__(self) -> str:
        return f"factoring gave up on target {self.target} at branch {list(self.prefix)}"


@dataclass(frozen=True)
class EquationState:
    """Residual equation after absorbing ``prefix``; ``remaining`` primes left.

    Invariants: alpha > beta >= 1, gamma >= 1, gcd(alpha, beta) = 1, prefix
    strictly ascending primes >= 5.
    """

    prefix: tuple[int, ...]
    alpha: int
    beta: int
    gamma: int
    remaining: int

    def __post_init__(self):
        if self.beta < 1 or self.alpha <= self.beta:
            raise ValueError(f"need alpha > beta >= 1, got ({self.alpha}, {self.beta})")
        if self.gamma < 1:
            raise ValueError(f"need gamma >= 1, got {self.gamma}")
        if gcd(self.alpha, self.beta) != 1:
            raise ValueError(f"alpha={self.alpha}, beta={self.beta} not coprime")
        if self.remaining < 1:
            raise ValueError(f"need remaining >= 1, got {self.remaining}")
        if any(p >= q for p, q in zip(self.prefix, self.prefix[1:])):
            raise ValueError(f"prefix not strictly ascending: {self.prefix}")

    @property
    def prefix_product(self) -> int:
        out = 1
        for p in self.prefix:
            out *= p
        return out

    @property
    def floor(self) -> int:
        """Strict lower bound for the next prime (3 admits the minimum, 5)."""
        return self.prefix[-1] if self.prefix else 3


@dataclass(frozen=True)
class Pruned:
    """Evidence that absorbing ``prime`` kills the branch.

    ``alpha``/``beta`` are the pre-normalization candidates and ``gcd`` their
    common divisor, so a gcd prune is fully reconstructible from the record.
    Reasons: 'gcd' (gcd does not divide gamma), 'corollary' (prime - 1
    divisible by a prefix prime), 'infeasible' (normalized alpha <= beta, so
    the residual equation has no solution at all).
    """

    reason: str
    prime: int
    alpha: int
    beta: int
    gcd: int


@dataclass(frozen=True)
class FactorPair:
    """Divisor pair f1 * f2 == target with f1 <= f2."""

    f1: int
    f2: int
    target: int

    def __post_init__(self):
        if self.f1 * self.f2 != self.target or self.f1 > self.f2 or self.f1 < 1:
            raise ValueError(f"bad factor pair ({self.f1}, {self.f2}) for {self.target}")


@dataclass(frozen=True)
class EndgameParams:
    """Two-prime endgame data: (delta*q - alpha)(delta*r - alpha) = target."""

    delta: int
    target: int
    residue: int  # admissible divisors satisfy f1 % delta == residue


def root_state(k: int) -> EquationState:
    """Initial state 3*prod(q-1) = 2*prod(q) + 2 with k primes to choose."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return EquationState(prefix=(), alpha=ROOT_ALPHA, beta=ROOT_BETA, gamma=ROOT_GAMMA, remaining=k)


def corollary_filter(prefix: tuple[int, ...], r: int) -> bool:
    """True when no already-chosen prime divides r - 1.

    Any solution prime r must avoid p | r - 1 for every other solution
    prime p; the reverse direction (r | p - 1 for a later r) is impossible
    because r > p - 1, so checking against the prefix alone is complete.
    """
    return all((r - 1) % p != 0 for p in prefix)


def absorb_prime(state: EquationState, q: int) -> EquationState | Pruned:
    """Extend the prefix by q, renormalizing, or report why that prunes.

    q must be a prime greater than state.floor (primality itself is the
    caller's obligation; structural constraints are checked here).
    """
    if state.remaining < 1:
        raise ValueError("no primes remain to absorb")
    if q < 5 or q <= state.floor:
        raise ValueError(f"next prime must exceed {state.floor} (and be >= 5), got {q}")
    a2 = state.alpha * (q - 1)
    b2 = state.beta * q
    g = gcd(a2, b2)
    if state.gamma % g:
        return Pruned(reason="gcd", prime=q, alpha=a2, beta=b2, gcd=g)
    if not corollary_filter(state.prefix, q):
        return Pruned(reason="corollary", prime=q, alpha=a2, beta=b2, gcd=g)
    a3, b3, g3 = a2 // g, b2 // g, state.gamma // g
    if a3 <= b3:
        # prod(q-1) < prod(q) forces LHS < RHS forever: dead branch.
        return Pruned(reason="infeasible", prime=q, alpha=a2, beta=b2, gcd=g)
    return EquationState(
        prefix=state.prefix + (q,),
        alpha=a3,
        beta=b3,
        gamma=g3,
        remaining=state.remaining - 1,
    )


def finiteness_bound(state: EquationState, table: PrimeTable) -> int:
    """Inclusive upper bound for the next prime in any solution.

    Scans consecutive-prime tails: if the next prime exceeded p_m, each of
    the ``remaining`` primes would be at least the corresponding entry of
    the tail after p_m, and once

        alpha * prod(tail_i - 1) > beta * prod(tail_i) + gamma

    holds the residual equation is unsatisfiable (the left side only grows
    faster).  The first p_m where that happens is returned; it can equal
    state.floor, in which case no admissible next prime exists.  All
    comparisons are exact integer arithmetic.
    """
    primes = table.primes
    rem = state.remaining
    i = table.index_of(state.floor)
    if i + rem + 1 > len(primes):
        raise PrimeTableExhausted(table.limit)
    tail = primes[i + 1 : i + 1 + rem]
    prod_m1 = 1
    prod_p = 1
    for p in tail:
        prod_m1 *= p - 1
        prod_p *= p
    alpha, beta, gamma = state.alpha, state.beta, state.gamma
    while True:
        if alpha * prod_m1 > beta * prod_p + gamma:
            return primes[i]
        i += 1
        if i + rem + 1 > len(primes):
            raise PrimeTableExhausted(table.limit)
        old = primes[i]
        new = primes[i + rem]
        prod_m1 = prod_m1 // (old - 1) * (new - 1)
        prod_p = prod_p // old * new


def limit_bound(state: EquationState, limit: int) -> int:
    """Inclusive upper bound on the next prime when n must stay <= limit.

    The remaining primes all exceed the next one, so the next prime is at
    most the remaining-th root of limit // prefix_product.
    """
    b = state.prefix_product
    if limit < b:
        raise ValueError(f"limit {limit} below prefix product {b}")
    return integer_root(limit // b, state.remaining)


def divisor_pairs(fact: Factorization) -> list[FactorPair]:
    """All pairs f1 <= f2 with f1 * f2 == fact.value, ascending in f1."""
    n = fact.value
    root = isqrt(n)
    return [FactorPair(d, n // d, n) for d in fact.divisors() if d <= root]


def endgame_params(state: EquationState) -> EndgameParams:
    """Constants of the two-prime identity for this state.

    With two primes q < r left, alpha(q-1)(r-1) = beta*q*r + gamma is
    equivalent to (delta*q - alpha)(delta*r - alpha) = alpha*beta +
    gamma*delta where delta = alpha - beta.  Both left factors are
    congruent to -alpha modulo delta, which cuts the divisors to try.
    """
    delta = state.alpha - state.beta
    target = state.alpha * state.beta + state.gamma * delta
    return EndgameParams(delta=delta, target=target, residue=(-state.alpha) % delta)


def one_prime_solve(
    state: EquationState, min_prime: int, limit: int | None = None
) -> list[int]:
    """Closed form for the last prime: q = (alpha + gamma) / (alpha - beta).

    Returns [q] when that value is integral, prime, beyond min_prime,
    compatible with the prefix, and (if limit is given) keeps n <= limit.
    """
    if state.remaining != 1:
        raise ValueError(f"one_prime_solve needs remaining == 1, got {state.remaining}")
    num = state.alpha + state.gamma
    delta = state.alpha - state.beta
    if num % delta:
        return []
    q = num // delta
    if q <= min_prime:
        return []
    if limit is not None and state.prefix_product * q > limit:
        return []
    if not corollary_filter(state.prefix, q):
        return []
    if not is_prime(q):
        return []
    return [q]


def two_prime_solve(
    state: EquationState,
    min_prime: int,
    limit: int | None = None,
    counters=None,
    trace: list | None = None,
) -> list[tuple[int, int]]:
    """All prime pairs q < r completing the equation from this state.

    Factors the endgame target and maps admissible divisor pairs back to
    (q, r) = ((f1 + alpha) / delta, (f2 + alpha) / delta).  Negative factor
    pairs of the target need no consideration: delta*q - alpha < 0 forces a
    negative partner r.  When a limit is given, targets too large for any
    n <= limit are rejected before factoring, and each surviving pair must
    keep n <= limit.

    ``counters`` (optional) receives prune tallies; ``trace`` (optional)
    collects (f1, f2, q, r, verdict) tuples for every divisor pair seen.
    """
    if state.remaining != 2:
        raise ValueError(f"two_prime_solve needs remaining == 2, got {state.remaining}")
    params = endgame_params(state)
    delta, target, residue = params.delta, params.target, params.residue
    b = state.prefix_product
    if limit is not None and target * b >= delta * delta * limit:
        # No n <= limit can reach this target; skip the factorization.
        if counters is not None:
            counters.prune_limit += 1
        return []
    try:
        fact = factorize(target)
    except FactoringError as exc:
        raise BranchFactoringError(target, state.prefix) from exc

    alpha = state.alpha
    out = []
    for pair in divisor_pairs(fact):
        if pair.f1 % delta != residue:
            if counters is not None:
                counters.prune_congruence += 1
            if trace is not None:
                trace.append((pair.f1, pair.f2, None, None, "congruence"))
            continue
        q = (pair.f1 + alpha) // delta
        r = (pair.f2 + alpha) // delta
        verdict = "accepted"
        if q <= min_prime:
            verdict = "min_prime"
        elif q >= r:
            verdict = "ordering"
        elif limit is not None and b * q * r > limit:
            verdict = "limit"
        elif not corollary_filter(state.prefix, q):
            verdict = "corollary"
        elif not corollary_filter(state.prefix + (q,), r):
            verdict = "corollary"
        elif not is_prime(q):
            verdict = "q_composite"
        elif not is_prime(r):
            verdict = "r_composite"
        if trace is not None:
            trace.append((pair.f1, pair.f2, q, r, verdict))
        if verdict == "accepted":
            out.append((q, r))
        elif counters is not None and verdict == "corollary":
            counters.prune_corollary += 1
    out.sort()
    return out
