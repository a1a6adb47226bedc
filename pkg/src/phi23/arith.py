"""Integer arithmetic substrate: prime tables, primality, factoring, roots.

Everything here works on plain Python integers, so intermediate products
never overflow regardless of operand size.  Primality is deterministic
Miller-Rabin over fixed witness sets with proven coverage far beyond the
64-bit range; factoring is trial division followed by Brent's variant of
Pollard rho with deterministic, seeded restarts.
"""

from __future__ import annotations

import math
import random
from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import compress
from math import gcd, isqrt

__all__ = [
    "PrimeTable",
    "PrimeTableExhausted",
    "Factorization",
    "FactoringError",
    "build_prime_table",
    "is_prime",
    "factorize",
    "gcd",
    "integer_root",
]

# Hard ceiling for sieve allocation (bytes); one byte per candidate.
_SIEVE_CAP = 1 << 32


class PrimeTableExhausted(Exception):
    """A request walked past the end of a prime table.

    ``needed`` is the smallest limit that would have satisfied the request,
    or None when the caller should simply grow by its own policy.
    """

    def __init__(self, limit: int, needed: int | None = None):
        self.limit = limit
        self.needed = needed
        super().__init__(f"prime table limit {limit} too small (needed {needed})")


class FactoringError(Exception):
    """Raised when factoring gave up after exhausting its retry budget.

    Callers must either retry with a larger ``rho_rounds`` budget or report
    the failure; the result is never silently truncated.
    """

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"factoring gave up on {n}")


@dataclass(frozen=True)
class PrimeTable:
    """Ascending primes up to ``limit``, stored compactly."""

    primes: array
    limit: int

    def __len__(self) -> int:
        return len(self.primes)

    def index_of(self, p: int) -> int:
        """Index of the prime p in the table; raises if absent."""
        i = bisect_left(self.primes, p)
        if i == len(self.primes) or self.primes[i] != p:
            raise ValueError(f"{p} is not in the table")
        return i

    def in_range(self, lo: int, hi: int):
        """Yield primes p with lo < p <= hi.

        Raises PrimeTableExhausted when hi lies beyond the sieved limit,
        since primes past the limit would be silently missed otherwise.
        """
        if hi > self.limit:
            raise PrimeTableExhausted(self.limit, needed=hi)
        i = bisect_right(self.primes, lo)
        j = bisect_right(self.primes, hi)
        for k in range(i, j):
            yield self.primes[k]


def build_prime_table(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` inclusive.

    limit must be >= 5.  Memory is one byte per candidate plus eight bytes
    per prime found; a limit implying more than the supported allocation is
    refused outright rather than truncated.
    """
    if limit < 5:
        raise ValueError(f"prime table limit must be >= 5, got {limit}")
    if limit >= _SIEVE_CAP:
        raise MemoryError(f"prime table limit {limit} exceeds supported sieve size")
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    primes = array("Q", compress(range(limit + 1), sieve))
    return PrimeTable(primes=primes, limit=limit)


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# (bound, witnesses): deterministic Miller-Rabin witness sets, each proven
# complete for all n below its bound.  The last two rows cover well past
# 2**64; the final row reaches about 3.3e24.
_MR_LADDER = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)


def _miller_rabin(n: int, witnesses) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in witnesses:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a & 1 == 0:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Strong Lucas test with Selfridge parameters; n odd, not a perfect
    # square, with no tiny prime factor.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == 0:
            return False
        if j == -1:
            break
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    # Binary ladder for U_d, V_d mod n with P = 1.
    U, V, qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u2 = (U + V) % n
            v2 = (V + D * U) % n
            if u2 & 1:
                u2 += n
            if v2 & 1:
                v2 += n
            U, V = u2 >> 1, v2 >> 1
            qk = qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        if V == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Proven exact for all n below 3.3e24 via the Miller-Rabin witness
    ladder (this subsumes the full 64-bit range plus every value the
    solver tests).  Beyond that the 13-prime witness set is combined with
    a strong Lucas test; no composite passing that combination is known.
    """
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    for bound, witnesses in _MR_LADDER:
        if n < bound:
            return _miller_rabin(n, witnesses)
    if not _miller_rabin(n, _MR_LADDER[-1][1]):
        return False
    r = isqrt(n)
    if r * r == n:
        return False
    return _strong_lucas(n)


# ---------------------------------------------------------------------------
# Factoring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Prime factorization value = prod(p**e), factors ascending in p."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def is_square_free(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def phi(self) -> int:
        """Euler totient computed from the factorization."""
        out = 1
        for p, e in self.factors:
            out *= p ** (e - 1) * (p - 1)
        return out

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            pk = 1
            step = []
            for _ in range(e):
                pk *= p
                step.extend(d * pk for d in divs)
            divs.extend(step)
        divs.sort()
        return divs


_TRIAL_LIMIT = 1_000
_TRIAL_PRIMES: tuple[int, ...] = ()


def _trial_primes() -> tuple[int, ...]:
    global _TRIAL_PRIMES
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES = tuple(build_prime_table(_TRIAL_LIMIT).primes)
    return _TRIAL_PRIMES


def _rho_brent(n: int, attempt: int, max_iters: int) -> int:
    """One Brent-cycle attempt at a nontrivial factor of composite odd n.

    Seeded deterministically from (n, attempt) so runs are reproducible.
    Returns a nontrivial divisor, or 0 when this attempt failed.
    """
    rng = random.Random(n * 0x9E3779B1 + attempt)
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    iters = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r <<= 1
        iters += r
        if iters > max_iters:
            return 0
    if g == n:
        # Backtrack one step at a time from the last checkpoint.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else 0


def _split(m: int, out: dict[int, int], rho_rounds: int) -> None:
    if m == 1:
        return
    if is_prime(m):
        out[m] = out.get(m, 0) + 1
        return
    for attempt in range(rho_rounds):
        d = _rho_brent(m, attempt, max_iters=1 << 21)
        if d:
            _split(d, out, rho_rounds)
            _split(m // d, out, rho_rounds)
            return
    raise FactoringError(m)


def factorize(n: int, rho_rounds: int = 8) -> Factorization:
    """Full prime factorization of n >= 1.

    Strategy: trial division by primes up to 1000, then a primality check,
    then recursive Brent-rho splitting with ``rho_rounds`` deterministic
    restarts per composite.  Raises FactoringError if the budget runs out;
    the caller may retry with a larger budget.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    if m > 1:
        # m has no factor <= min(1000, sqrt(m)).
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            _split(m, out, rho_rounds)
    return Factorization(value=n, factors=tuple(sorted(out.items())))


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------


def integer_root(x: int, r: int) -> int:
    """Largest t with t**r <= x, for x >= 0 and r >= 1.

    A float estimate seeds the result and exact integer comparisons settle
    the boundary, so the answer is always the true floor root.
    """
    if r < 1:
        raise ValueError(f"root order must be >= 1, got {r}")
    if x < 0:
        raise ValueError(f"integer_root requires x >= 0, got {x}")
    if r == 1 or x < 2:
        return x
    if r == 2:
        return isqrt(x)
    if x >> r == 0:
        # x < 2**r, so the root is 1.
        return 1
    try:
        t = int(x ** (1.0 / r))
    except OverflowError:
        t = 1 << (x.bit_length() // r + 1)
    while t > 1 and t**r > x:
        t -= 1
    while (t + 1) ** r <= x:
        t += 1
    return t
