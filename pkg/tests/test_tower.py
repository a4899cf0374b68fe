import math
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matrep.tower import (
    Incomparable,
    TowerNumber,
    compare,
    is_power_of_two,
    ln2_bracket,
    log2_bracket,
    log2e_bracket,
)

T = TowerNumber.tower
V = TowerNumber.value


def test_collapse_small_towers():
    assert T(2, 2).is_plain and T(2, 2).as_int() == 16
    t = T(2, 8)
    assert (t.height, t.top) == (2, 8)
    assert t == T(1, 256) and hash(t) == hash(T(1, 256))
    assert T(1, 63).as_int() == 2 ** 63
    assert T(1, 64).height == 1


def test_text():
    assert T(2, 32768).to_text() == "2^2^32768"
    assert T(1, Fraction(1, 2)).to_text() == "2^(1/2)"
    assert V(Fraction(7, 3)).to_text() == "7/3"
    assert T(1, 300, exact=False).to_json() == {"height": 1, "top": "300", "exact": False, "text": "2^300"}


def test_compare_examples():
    assert compare(2 ** 300 + 1, T(1, 300)) == (1, True)
    assert compare(T(2, 8), 2 ** 256) == (0, True)
    assert T(3, 512) > T(2, 4096)
    assert T(2, 4096) < T(2, 32768)
    assert V(-5) < T(1, 100)
    assert V(0) < V(1)


def test_undecidable_raises():
    # these differ far below any 64-bit bracket
    a = T(1, Fraction(2 ** 70 + 1, 2 ** 70) * 10 ** 6)
    b = V(2 ** 1000000)
    sign, _ = compare(a, b)
    if sign is None:
        with pytest.raises(Incomparable):
            a < b


def test_equality_requires_a_decision():
    assert T(1, 100) == 2 ** 100
    assert not (T(1, 100) == 2 ** 100 + 1)


def test_arithmetic_is_an_upper_bound():
    a, b = T(1, 100), T(1, 200)
    assert (a * b).top == 300 and not (a * b).exact
    assert (a + b) >= 2 ** 200 + 2 ** 100
    assert (V(3) * V(4)).as_int() == 12


def test_brackets_and_constants():
    with localcontext() as ctx:
        ctx.prec = 50
        ln2 = Fraction(Decimal(2).ln())
    eps = Fraction(1, 10 ** 45)
    lo, hi = ln2_bracket()
    assert lo <= ln2 - eps and ln2 + eps <= hi and hi - lo <= Fraction(1, 2 ** 63)
    elo, ehi = log2e_bracket()
    assert elo <= 1 / hi and 1 / lo <= ehi
    assert abs(float(elo) - 1 / math.log(2)) < 1e-15 and ehi - elo <= Fraction(1, 2 ** 62)
    assert log2_bracket(1024) == (10, 10)
    assert is_power_of_two(Fraction(1, 8)) and not is_power_of_two(6)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2 ** 512))
def test_log2_bracket_contains_float(x):
    lo, hi = log2_bracket(x)
    assert lo <= hi and hi - lo <= Fraction(1, 2 ** 64)
    f = math.log2(x)
    assert float(lo) - 1e-9 <= f <= float(hi) + 1e-9
    # exact check: 2^lo <= x <= 2^hi via integer powers of the grid
    assert 2 ** math.floor(lo) <= x < 2 ** (math.floor(hi) + 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 600), st.integers(1, 2 ** 600))
def test_tower_vs_integers(e, n):
    sign, exact = compare(T(1, e), n)
    truth = (2 ** e > n) - (2 ** e < n)
    assert sign == truth and exact


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.integers(1, 12), st.integers(2, 2 ** 64))
def test_rational_tops_vs_integers(p, q, n):
    # 2^(p/q) vs n  <=>  2^p vs n^q
    sign, _ = compare(T(1, Fraction(p, q)), n)
    truth = (2 ** p > n ** q) - (2 ** p < n ** q)
    assert sign in (truth, None)
    if sign is None:
        assert truth != 0 or Fraction(p, q).denominator != 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.integers(1, 2 ** 40), st.integers(0, 4), st.integers(1, 2 ** 40))
def test_compare_is_antisymmetric(h1, t1, h2, t2):
    a, b = T(h1, t1), T(h2, t2)
    s1, _ = compare(a, b)
    s2, _ = compare(b, a)
    assert s1 is None and s2 is None or s1 == -s2


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.integers(64, 10 ** 6), st.integers(0, 4), st.integers(64, 10 ** 6))
def test_height_dominates(h1, t1, h2, t2):
    # with tops in [64, 10^6] a taller tower is always larger
    if h1 == h2:
        return
    sign, _ = compare(T(h1, t1), T(h2, t2))
    assert sign == (1 if h1 > h2 else -1)
