"""Tests for the integer arithmetic layer."""

import random
from math import isqrt

import pytest

from helpers import simple_sieve, trial_is_prime
from phi23.arith import (
    FactoringError,
    PrimeTableExhausted,
    _strong_lucas,
    build_prime_table,
    factorize,
    gcd,
    integer_root,
    is_prime,
)


def test_prime_table_small_limits():
    table = build_prime_table(10)
    assert list(table.primes) == [2, 3, 5, 7]
    assert len(table) == 4
    assert table.limit == 10
    assert list(build_prime_table(5).primes) == [2, 3, 5]
    with pytest.raises(ValueError):
        build_prime_table(4)


def test_prime_table_millionth_prime():
    # expected values cross-checked against an independent odd-only sieve
    table = build_prime_table(20_000_000)
    ref = simple_sieve(20_000_000)
    assert len(table) == len(ref) == 1_270_607
    assert table.primes[999_999] == ref[999_999] == 15_485_863
    assert table.primes[0] == 2
    assert table.primes[-1] == ref[-1] == 19_999_999


def test_prime_table_matches_trial_division():
    table = build_prime_table(10_000)
    want = [n for n in range(2, 10_001) if trial_is_prime(n)]
    assert list(table.primes) == want


def test_prime_table_index_of():
    table = build_prime_table(100)
    assert table.index_of(2) == 0
    assert table.index_of(5) == 2
    assert table.index_of(97) == 24
    with pytest.raises(ValueError):
        table.index_of(9)
    with pytest.raises(ValueError):
        table.index_of(101)


def test_prime_table_in_range():
    table = build_prime_table(100)
    assert list(table.in_range(3, 20)) == [5, 7, 11, 13, 17, 19]
    assert list(table.in_range(4, 20)) == [5, 7, 11, 13, 17, 19]
    assert list(table.in_range(5, 20)) == [7, 11, 13, 17, 19]
    assert list(table.in_range(89, 97)) == [97]
    assert list(table.in_range(10, 10)) == []
    assert list(table.in_range(0, 100)) == list(table.primes)
    with pytest.raises(PrimeTableExhausted):
        list(table.in_range(0, 101))


def test_is_prime_matches_sieve_exhaustively():
    limit = 200_000
    flags = set(simple_sieve(limit))
    for n in range(limit + 1):
        assert is_prime(n) == (n in flags), n


def test_is_prime_edge_cases():
    assert not is_prime(-7)
    assert not is_prime(0)
    assert not is_prime(1)
    assert is_prime(2)
    assert is_prime(3)
    assert not is_prime(4)
    assert is_prime(37)
    assert is_prime(1297)
    assert not is_prime(49)
    assert not is_prime(133)


def test_is_prime_large_values():
    m61 = (1 << 61) - 1
    assert is_prime(m61)
    m89 = (1 << 89) - 1
    assert is_prime(m89)
    m97 = (1 << 97) - 1
    assert m97 % 11447 == 0  # known factor, so composite
    assert not is_prime(m97)
    # perfect square beyond 64 bits exercises the square guard
    assert not is_prime(m61 * m61)
    assert not is_prime(m61 * m89)


def test_strong_lucas_on_primes_and_known_pseudoprime():
    for n in simple_sieve(20_000):
        if n > 11:
            assert _strong_lucas(n), n
    # 5459 = 53 * 103 is a strong Lucas pseudoprime; the Miller-Rabin
    # ladder inside is_prime must still reject it
    assert _strong_lucas(5459)
    assert not trial_is_prime(5459)
    assert not is_prime(5459)


def test_factorize_known_values():
    assert factorize(1).factors == ()
    assert factorize(2).as_dict() == {2: 1}
    assert factorize(720).as_dict() == {2: 4, 3: 2, 5: 1}
    assert factorize(4687).as_dict() == {43: 1, 109: 1}
    assert factorize(1261).as_dict() == {13: 1, 97: 1}
    assert factorize(15_485_863).as_dict() == {15_485_863: 1}
    assert factorize(1727).as_dict() == {11: 1, 157: 1}
    assert factorize(2_239_487).as_dict() == {23: 1, 97_369: 1}
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_large_semiprime():
    p, q = 1_000_003, 10_000_019
    assert trial_is_prime(p) and trial_is_prime(q)
    f = factorize(p * q)
    assert f.as_dict() == {p: 1, q: 1}
    assert f.value == p * q


def test_factorize_roundtrip_random():
    rng = random.Random(0xC0FFEE)
    for _ in range(20_000):
        n = rng.randrange(1, 1 << 60)
        f = factorize(n)
        back = 1
        last = 1
        for p, e in f.factors:
            assert p > last, "factors must be strictly ascending"
            assert e >= 1
            assert is_prime(p)
            back *= p**e
            last = p
        assert back == n


def test_factorize_gives_up_without_rho():
    n = 1_000_003 * 10_000_019
    with pytest.raises(FactoringError) as info:
        factorize(n, rho_rounds=0)
    assert info.value.n == n


def test_factorization_helpers():
    f = factorize(1261)
    assert f.divisors() == [1, 13, 97, 1261]
    assert f.phi() == 12 * 96
    assert f.is_square_free
    assert not factorize(720).is_square_free
    assert factorize(7).phi() == 6
    assert factorize(1).phi() == 1
    assert factorize(1).divisors() == [1]
    assert factorize(36).divisors() == [1, 2, 3, 4, 6, 9, 12, 18, 36]


def test_gcd_reexport():
    assert gcd(60, 55) == 5
    assert gcd(36, 35) == 1
    assert gcd(0, 7) == 7


def test_integer_root_pinned_values():
    x = 10**14 // 35
    assert integer_root(x, 5) == 309
    assert 309**5 <= x < 310**5
    assert integer_root(8, 3) == 2
    assert integer_root(7, 3) == 1
    assert integer_root(1, 9) == 1
    assert integer_root(0, 4) == 0
    assert integer_root(10**30, 1) == 10**30
    assert integer_root((10**12 + 39) ** 2, 2) == 10**12 + 39
    assert integer_root((10**12 + 39) ** 2 - 1, 2) == 10**12 + 38


def test_integer_root_rejects_bad_input():
    with pytest.raises(ValueError):
        integer_root(5, 0)
    with pytest.raises(ValueError):
        integer_root(-1, 2)


def test_integer_root_random():
    rng = random.Random(31337)
    for _ in range(100_000):
        r = rng.randrange(1, 13)
        x = rng.randrange(0, 1 << 127)
        t = integer_root(x, r)
        assert t**r <= x, (x, r, t)
        assert (t + 1) ** r > x, (x, r, t)


def test_integer_root_perfect_powers():
    rng = random.Random(777)
    for _ in range(2_000):
        r = rng.randrange(2, 9)
        b = rng.randrange(1, 1 << 20)
        assert integer_root(b**r, r) == b
        assert integer_root(b**r + 1, r) == b
        if b > 1:
            assert integer_root(b**r - 1, r) == b - 1


def test_sieve_cross_check_medium(primes_100k):
    table = build_prime_table(100_000)
    assert list(table.primes) == primes_100k
