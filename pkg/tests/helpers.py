"""Independent reference implementations backing the test expectations.

Nothing here shares code with the package: primality is plain trial
division, the sieve is a separate odd-only implementation, and the pair
oracles test the raw residual equation directly.
"""

from __future__ import annotations

import math
from itertools import combinations

from phi23.equation import EquationState, Pruned, absorb_prime, root_state


def simple_sieve(limit: int) -> list[int]:
    """Odd-only sieve of Eratosthenes, independent of the package's sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * ((limit + 1) // 2)  # flags[i] marks 2*i + 1
    flags[0] = 0
    for i in range(1, (math.isqrt(limit) + 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            start = (p * p) // 2
            flags[start::p] = bytearray(len(flags[start::p]))
    primes = [2]
    primes.extend(2 * i + 1 for i in range(len(flags)) if flags[i])
    if primes[-1] > limit:
        primes.pop()
    return primes


def trial_is_prime(n: int) -> bool:
    """6k+-1 trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def naive_phi(n: int) -> int:
    """Euler totient by trial factorization."""
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def equation_holds(primes) -> bool:
    """Raw test of 3 * prod(p - 1) == 2 * prod(p) + 2."""
    n = 1
    tot = 1
    for p in primes:
        n *= p
        tot *= p - 1
    return 3 * tot == 2 * n + 2


def brute_force_k(k: int, primes: list[int]) -> set[tuple[int, ...]]:
    """All ascending k-tuples from ``primes`` satisfying the raw equation.

    No pruning at all beyond the ascending order, so this is the ground
    truth the pruned search must reproduce on small ranges.
    """
    return {combo for combo in combinations(primes, k) if equation_holds(combo)}


def pair_scan(
    alpha: int,
    beta: int,
    gamma: int,
    min_prime: int,
    bound: int,
    primes: list[int],
    prime_set: set[int],
) -> set[tuple[int, int]]:
    """All prime pairs min_prime < q < r <= bound solving the residual equation.

    Solves alpha*(q-1)*(r-1) = beta*q*r + gamma for r at each prime q and
    verifies the raw equation for every candidate, covering every pair in
    the box without enumerating the quadratic number of combinations.
    """
    delta = alpha - beta
    out = set()
    for q in primes:
        if q > bound:
            break
        if q <= min_prime:
            continue
        denom = delta * q - alpha
        if denom <= 0:
            continue
        num = alpha * (q - 1) + gamma
        if num <= denom * q:
            break  # r <= q from here on: r is strictly decreasing in q
        if num % denom:
            continue
        r = num // denom
        if r <= bound and r in prime_set:
            assert alpha * (q - 1) * (r - 1) == beta * q * r + gamma
            out.add((q, r))
    return out


def literal_pairs(
    alpha: int, beta: int, gamma: int, min_prime: int, primes: list[int]
) -> set[tuple[int, int]]:
    """Dumb double loop over prime pairs testing the raw equation."""
    eligible = [p for p in primes if p > min_prime]
    return {
        (q, r)
        for q, r in combinations(eligible, 2)
        if alpha * (q - 1) * (r - 1) == beta * q * r + gamma
    }


def absorb_chain(prefix: tuple[int, ...], extra: int = 2) -> EquationState | None:
    """State reached by absorbing ``prefix`` with ``extra`` primes left over.

    Returns None when any absorption prunes.
    """
    state = root_state(len(prefix) + extra)
    for q in prefix:
        nxt = absorb_prime(state, q)
        if isinstance(nxt, Pruned):
            return None
        state = nxt
    return state


def reachable_endgame_states(
    primes: list[int], max_product: int, max_len: int = 3
) -> list[EquationState]:
    """Surviving remaining-2 states over ascending prefixes from ``primes``."""
    out = [root_state(2)]

    def rec(prefix: tuple[int, ...], product: int, start: int):
        for i in range(start, len(primes)):
            p = primes[i]
            if product * p > max_product:
                break
            state = absorb_chain(prefix + (p,))
            if state is not None:
                out.append(state)
                if len(prefix) + 1 < max_len:
                    rec(prefix + (p,), product * p, i + 1)

    rec((), 1, 0)
    return out
