from math import prod

from hypothesis import given, strategies as st

from matrep.primes import is_probable_prime, least_prime_in, primorial, sieve


def _trial(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_sieve_small():
    assert sieve(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve(1) == []
    assert len(sieve(10 ** 5)) == 9592


@given(st.integers(0, 20000))
def test_miller_rabin_matches_trial_division(n):
    assert is_probable_prime(n) == _trial(n)


def test_miller_rabin_large():
    assert is_probable_prime(2 ** 61 - 1)
    assert not is_probable_prime((2 ** 31 - 1) * (2 ** 61 - 1))
    assert not is_probable_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_least_prime_in():
    assert least_prime_in(4, 8) == 5
    assert least_prime_in(128, 256) == 131
    assert least_prime_in(24, 28) is None
    assert least_prime_in(2 ** 40, 2 ** 40 + 1000) == next(n for n in range(2 ** 40, 2 ** 41) if is_probable_prime(n))


def test_primorial():
    assert primorial(10) == 210
    assert primorial(1) == 1
    assert primorial(30) == prod(sieve(30))
