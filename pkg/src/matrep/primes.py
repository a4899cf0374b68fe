"""Prime sieve, primality and primorials."""

from __future__ import annotations

from math import isqrt

SIEVE_LIMIT = 10 ** 7


def sieve(limit: int) -> list[int]:
    """All primes <= limit (Eratosthenes)."""
    if limit < 2:
        return []
    if limit > SIEVE_LIMIT:
        raise ValueError(f"sieve limit {limit} above {SIEVE_LIMIT}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


# deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; exact below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_prime_in(lo: int, hi: int):
    """Least prime in [lo, hi] or None."""
    if hi <= SIEVE_LIMIT:
        return next((p for p in sieve(hi) if p >= lo), None)
    n = max(lo, 2)
    while n <= hi:
        if is_probable_prime(n):
            return n
        n += 1
    return None


def primorial(a: int, primes=None) -> int:
    """Product of the primes <= a (1 for a < 2)."""
    out = 1
    for p in primes if primes is not None else sieve(a):
        if p > a:
            break
        out *= p
    return out
