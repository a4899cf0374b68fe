"""Upper and lower bounds on c(n), f(n) and related quantities, evaluated exactly.

Everything returns :class:`TowerNumber`.  Where a formula needs a logarithm
that is not an integer, the upper end of a rational bracket is used and the
result is flagged as an upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import NTooSmall
from .primes import least_prime_in, sieve
from .tower import TowerNumber, log2_bracket, log2e_bracket

# materialize an integer bound when its log2 is at most this
MATERIALIZE_BITS = 1 << 16
PRIMORIAL_MAX = 10 ** 5


def _lg(x) -> tuple[Fraction, bool]:
    """Upper bound on log2 x and whether it is exact."""
    lo, hi = log2_bracket(x)
    return hi, lo == hi


def effective_rado_degree_bound(n: int) -> TowerNumber:
    """2^(2^(2 n^2))."""
    if n < 1:
        raise ValueError("n must be positive")
    return TowerNumber.tower(2, 2 * n * n)


def _power_bound(a: int, b: int, D: int) -> TowerNumber:
    """2^a * D^b, exactly when small enough, else as 2^(upper log2)."""
    lgD, exact = _lg(D)
    log2 = a + b * lgD
    if log2 <= MATERIALIZE_BITS:
        return TowerNumber.value(2 ** a * D ** b)
    return TowerNumber.tower(1, log2, exact)


def degree_bound_char0(t: int, D: int) -> TowerNumber:
    """2^(2^t - t - 1) * D^(2^t - 1): degree of the final eliminant, separable case."""
    if t < 1 or D < 1:
        raise ValueError("t and D must be positive")
    return _power_bound(2 ** t - t - 1, 2 ** t - 1, D)


def degree_bound_charp(t: int, D: int) -> TowerNumber:
    """2^(3*2^(t-1) - 2t - 1) * D^(3*2^(t-1) - 2): the worst case with inseparable steps."""
    if t < 1 or D < 1:
        raise ValueError("t and D must be positive")
    m = 3 * 2 ** (t - 1)
    return _power_bound(m - 2 * t - 1, m - 2, D)


def kps_log2(s: int, t: int, d: int, log2_height: Fraction) -> Fraction:
    """Upper bound on log2 of the Nullstellensatz integer a.

    The sharp estimate reads log a <= 4t(t+1)d^t (h + log s + (t+7) log(t+1) d)
    with natural logs and h = log(max height).  Multiplying by log2(e) turns
    every natural log into log2, so only the log2 values are bracketed.
    """
    lgs, _ = _lg(s)
    lgt, _ = _lg(t + 1)
    return 4 * t * (t + 1) * d ** t * (log2_height + lgs + (t + 7) * lgt * d)


def _check_positive(**kw):
    for k, v in kw.items():
        if v < 1:
            raise ValueError(f"{k} must be positive, got {v}")


def kps_bound(s: int, t: int, d: int, h) -> TowerNumber:
    """Bound on a, given h as a natural-log height (h >= 0)."""
    _check_positive(s=s, t=t, d=d)
    h = Fraction(h)
    if h < 0:
        raise ValueError("h must be non-negative")
    _, e_hi = log2e_bracket()
    return TowerNumber.tower(1, kps_log2(s, t, d, h * e_hi), exact=False)


def kps_bound_from_height(s: int, t: int, d: int, H: int) -> TowerNumber:
    """Same bound with h = ln H, computed via log2 H directly."""
    _check_positive(s=s, t=t, d=d, H=H)
    lgH, _ = _lg(H)
    return TowerNumber.tower(1, kps_log2(s, t, d, lgH), exact=False)


# binomials with at most this many bits are computed exactly
_COMB_BITS = 1 << 20


def _L(s: int, t: int, d: int):
    """L = s * C(d^t + t, t); an int, or an upper bound on log2 L."""
    log2_a = t * log2_bracket(d)[1]  # log2 d^t
    if t * (log2_a + 1) <= _COMB_BITS:
        return s * comb(d ** t + t, t), None
    # C(a + t, t) <= (a + t)^t and a + t <= 2 d^t when d >= 2
    return None, log2_bracket(s)[1] + t * (log2_a + 1)


def char0_prime_bound(s: int, t: int, d: int, H: int):
    """(L, prime_bound, gfp_threshold) from the linear-algebra proof of the char-0 case.

    prime_bound = 6 + 2 L log2 H + L log2 L bounds the primes modulo which an
    inconsistent system can become consistent; gfp_threshold = H^L L^(L/2).
    """
    _check_positive(s=s, t=t, d=d, H=H)
    L, lgL_top = _L(s, t, d)
    lgH, exH = _lg(H)
    if L is not None:
        lgL, exL = _lg(L)
        pb = TowerNumber.value(6 + 2 * L * lgH + L * lgL, exH and exL)
        thr = TowerNumber.tower(1, L * lgH + Fraction(L, 2) * lgL, exH and exL)
        return TowerNumber.value(L), pb, thr
    # L only known through lgL_top >= log2 L
    Lt = TowerNumber.tower(1, lgL_top, exact=False)
    x = 2 * lgH + lgL_top  # prime_bound <= 6 + L x <= 2 L x
    pb = TowerNumber.tower(1, 1 + lgL_top + log2_bracket(x)[1], exact=False)
    y = lgH + lgL_top / 2  # log2 threshold = L y
    thr = TowerNumber.tower(2, lgL_top + log2_bracket(y)[1], exact=False)
    return Lt, pb, thr


@dataclass(frozen=True)
class HeadlineBounds:
    n: int
    c: TowerNumber
    f: TowerNumber
    c_pos: TowerNumber
    f_pos: TowerNumber
    c_zero: TowerNumber
    f_zero: TowerNumber
    gfp_threshold: TowerNumber

    def rows(self) -> list[tuple[str, str, TowerNumber]]:
        """(key, description, value) in a fixed order."""
        return [
            ("c", "c(n) <=", self.c),
            ("f", "f(n) <=", self.f),
            ("c_pos", "c_>0(n) <=", self.c_pos),
            ("f_pos", "f_>0(n) <=", self.f_pos),
            ("c_zero", "c_0(n) <=", self.c_zero),
            ("f_zero", "f_0(n) <=", self.f_zero),
            ("gfp_threshold", "GF(p) representable when p >", self.gfp_threshold),
        ]


def headline_bounds(n: int) -> HeadlineBounds:
    if n < 8:
        raise NTooSmall(f"the headline bounds assume n >= 8, got {n}")
    return HeadlineBounds(
        n=n,
        c=TowerNumber.tower(2, n ** 5),
        f=TowerNumber.tower(3, n ** 3),
        c_pos=TowerNumber.tower(2, n ** 4),
        f_pos=TowerNumber.tower(3, n ** 3),
        c_zero=TowerNumber.tower(2, n ** 5),
        f_zero=TowerNumber.tower(3, n ** 3),
        gfp_threshold=TowerNumber.tower(3, n ** 5),
    )


def _pow2_half(e: int, up: bool) -> int:
    """ceil (up) or floor of 2^(e/2) for e >= 0."""
    if e % 2 == 0:
        return 2 ** (e // 2)
    r = isqrt(2 ** e)  # 2^e is never a square here
    return r + 1 if up else r


@dataclass(frozen=True)
class LowerBoundWitness:
    n: int
    bound: TowerNumber
    prime: int
    window: tuple
    fits: bool  # 2 floor(log2 p) + 6 <= n


def lower_bound_witness(n: int) -> LowerBoundWitness:
    """c(n) >= 2^((n-7)/2), witnessed by the least prime in [2^((n-7)/2), 2^((n-5)/2)]."""
    if n < 7:
        raise NTooSmall(f"lower bound needs n >= 7, got {n}")
    if n - 5 > 120:
        raise ValueError("window above 2^60")
    lo = _pow2_half(n - 7, up=True)
    hi = _pow2_half(n - 5, up=False)
    p = least_prime_in(lo, hi)
    if p is None:
        raise AssertionError(f"no prime in [{lo}, {hi}]")
    fits = 2 * (p.bit_length() - 1) + 6 <= n
    return LowerBoundWitness(n, TowerNumber.tower(1, Fraction(n - 7, 2)), p, (lo, hi), fits)


def primorial_check(a_max: int) -> list[tuple]:
    """Rows (a, primorial(a), 2^(a-3), primorial(a) > 2^(a-3)) for a = 1..a_max."""
    if a_max > PRIMORIAL_MAX:
        raise ValueError(f"a_max above {PRIMORIAL_MAX}")
    ps = sieve(a_max)
    rows = []
    prod, i = 1, 0
    for a in range(1, a_max + 1):
        while i < len(ps) and ps[i] <= a:
            prod *= ps[i]
            i += 1
        thr = Fraction(2) ** (a - 3)
        rows.append((a, prod, thr, prod > thr))
    return rows


__all__ = [
    "HeadlineBounds", "LowerBoundWitness", "char0_prime_bound", "degree_bound_char0",
    "degree_bound_charp", "effective_rado_degree_bound", "headline_bounds", "kps_bound",
    "kps_bound_from_height", "lower_bound_witness", "primorial_check",
]
