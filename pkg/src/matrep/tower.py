"""Exact iterated exponentials 2^2^...^top and rigorous logarithms.

A :class:`TowerNumber` is either a plain rational value or a tower
``2^(2^(...^top))`` with ``height`` twos.  Values below 2^64 are always
stored in plain form.  A flag records whether the number is the exact value
of a formula or only an upper bound for it.

Comparisons take base-2 logarithms until both sides are plain numbers or
towers of equal height.  Logarithms of non-powers of two are bracketed by
rationals with denominator 2^64, so a comparison either comes out decided
(and says whether brackets were needed) or is reported as undecidable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import MatrepError

PREC = 64
_WORK = 192
# compare() expands 2^k exactly for integers k up to this
MATERIALIZE_BITS = 1 << 16


class Incomparable(MatrepError, TypeError):
    """The brackets overlap; the order cannot be certified."""


def _floor_to_grid(x: Fraction) -> Fraction:
    return Fraction((x.numerator << PREC) // x.denominator, 2 ** PREC)


def _ceil_to_grid(x: Fraction) -> Fraction:
    return Fraction(-((-x.numerator << PREC) // x.denominator), 2 ** PREC)


def log2_bracket(x) -> tuple[Fraction, Fraction]:
    """Rationals lo <= log2(x) <= hi with hi - lo <= 2^-64 (equal when x is a power of 2)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 of a non-positive number")
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()
    # fix e so that 2^e <= x < 2^(e+1)
    if e >= 0:
        if num < den << e:
            e -= 1
    elif num << -e < den:
        e -= 1
    if e >= 0:
        yn, yd = num, den << e
    else:
        yn, yd = num << -e, den
    if yn == yd:
        return Fraction(e), Fraction(e)
    one = 1 << _WORK
    two = one << 1
    lo = (yn << _WORK) // yd
    hi = -((-yn << _WORK) // yd)
    bits = 0
    k = 0
    for _ in range(PREC):
        lo = (lo * lo) >> _WORK
        hi = -((-hi * hi) >> _WORK)
        if lo >= two:
            bit = 1
            lo >>= 1
            hi = -((-hi) >> 1)
        elif hi < two:
            bit = 0
        else:
            break  # the bit is not determined at this precision
        bits = 2 * bits + bit
        k += 1
    base = Fraction(e) + Fraction(bits, 2 ** k)
    return base, base + Fraction(1, 2 ** k)


def log2_upper(x) -> Fraction:
    return log2_bracket(x)[1]


def log2_lower(x) -> Fraction:
    return log2_bracket(x)[0]


def is_power_of_two(x) -> bool:
    x = Fraction(x)
    if x <= 0:
        return False
    n, d = x.numerator, x.denominator
    return (n & (n - 1)) == 0 and (d & (d - 1)) == 0


@lru_cache(maxsize=None)
def ln2_bracket() -> tuple[Fraction, Fraction]:
    """ln 2 = sum 1/(k 2^k); the tail after N terms is below 1/((N+1) 2^N)."""
    N = PREC + 8
    s = Fraction(0)
    for k in range(1, N + 1):
        s += Fraction(1, k * 2 ** k)
    lo = s
    hi = s + Fraction(1, (N + 1) * 2 ** N)
    return _floor_to_grid(lo), _ceil_to_grid(hi)


def log2e_bracket() -> tuple[Fraction, Fraction]:
    lo, hi = ln2_bracket()
    return _floor_to_grid(1 / hi), _ceil_to_grid(1 / lo)


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class TowerNumber:
    """``height == 0``: the rational ``top``; otherwise 2^(2^(...top)) with height twos."""

    __slots__ = ("height", "top", "exact")

    def __init__(self, height: int, top, exact: bool = True):
        top = Fraction(top)
        # small values are stored plainly; anything at or above 2^64 keeps its tower form
        h, v = height, top
        while h >= 1 and v.denominator == 1 and v < 64:
            v = Fraction(2) ** int(v)
            h -= 1
        if h == 0:
            height, top = 0, v
        self.height = height
        self.top = top
        self.exact = exact

    @classmethod
    def value(cls, v, exact: bool = True) -> "TowerNumber":
        return cls(0, v, exact)

    @classmethod
    def tower(cls, height: int, top, exact: bool = True) -> "TowerNumber":
        if height < 0:
            raise ValueError("height must be non-negative")
        return cls(height, top, exact)

    @classmethod
    def from_log2(cls, log2_value, exact: bool = True) -> "TowerNumber":
        return cls(1, log2_value, exact)

    @property
    def is_plain(self) -> bool:
        return self.height == 0

    def as_int(self) -> int:
        if self.height or self.top.denominator != 1:
            raise ValueError(f"{self} is not an integer in plain form")
        return int(self.top)

    def as_fraction(self) -> Fraction:
        if self.height:
            raise ValueError(f"{self} is a tower")
        return self.top

    def log2(self) -> "TowerNumber":
        """log2 of the number; an upper bound (flag cleared) when not exact."""
        if self.height:
            return TowerNumber(self.height - 1, self.top, self.exact)
        lo, hi = log2_bracket(self.top)
        return TowerNumber(0, hi, self.exact and lo == hi)

    def exp2(self) -> "TowerNumber":
        return TowerNumber(self.height + 1, self.top, self.exact)

    def upper(self) -> "TowerNumber":
        return TowerNumber(self.height, self.top, False)

    def log2_upper(self) -> Fraction:
        """A rational upper bound on log2 (exact for towers and powers of 2)."""
        if self.height == 1:
            return self.top
        if self.height == 0:
            return log2_upper(self.top)
        raise OverflowError("log2 of a tower of height >= 2 is not a plain rational")

    # --- arithmetic (upper bounds) -------------------------------------------

    def __mul__(self, other) -> "TowerNumber":
        other = as_tower(other)
        exact = self.exact and other.exact
        if self.is_plain and other.is_plain:
            return TowerNumber(0, self.top * other.top, exact)
        a, b = self._log2_upper_or_raise(), other._log2_upper_or_raise()
        return TowerNumber(1, a + b, False)

    __rmul__ = __mul__

    def __add__(self, other) -> "TowerNumber":
        other = as_tower(other)
        exact = self.exact and other.exact
        if self.is_plain and other.is_plain:
            return TowerNumber(0, self.top + other.top, exact)
        # a + b <= 2 max(a, b)
        a, b = self._log2_upper_or_raise(), other._log2_upper_or_raise()
        return TowerNumber(1, 1 + max(a, b), False)

    __radd__ = __add__

    def _log2_upper_or_raise(self) -> Fraction:
        if self.is_plain and self.top <= 0:
            raise ValueError("bound arithmetic on towers needs positive operands")
        return self.log2_upper()

    # --- comparison ---------------------------------------------------------------

    def compare(self, other) -> tuple:
        return compare(self, as_tower(other))

    def _cmp_or_raise(self, other) -> int:
        sign, _exact = compare(self, as_tower(other))
        if sign is None:
            raise Incomparable(f"cannot order {self} and {other} with {PREC}-bit brackets")
        return sign

    def __eq__(self, other):
        if not isinstance(other, (TowerNumber, int, Fraction)):
            return NotImplemented
        return compare(self, as_tower(other))[0] == 0

    def __hash__(self):
        # equal values must hash alike, so hash the most collapsed form
        h, v = self.height, self.top
        while h >= 1 and v.denominator == 1 and v < 64:
            v = Fraction(2) ** int(v)
            h -= 1
        return hash((h, v))

    def __lt__(self, other):
        return self._cmp_or_raise(other) < 0

    def __le__(self, other):
        return self._cmp_or_raise(other) <= 0

    def __gt__(self, other):
        return self._cmp_or_raise(other) > 0

    def __ge__(self, other):
        return self._cmp_or_raise(other) >= 0

    # --- text -----------------------------------------------------------------------

    def to_text(self) -> str:
        if not self.height:
            return _frac_text(self.top)
        top = _frac_text(self.top)
        if self.top.denominator != 1 or self.top < 0:
            top = f"({top})"
        return "2^" * self.height + top

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        flag = "" if self.exact else ", upper bound"
        return f"TowerNumber({self.to_text()}{flag})"

    def to_json(self) -> dict:
        return {"height": self.height, "top": _frac_text(self.top), "exact": self.exact, "text": self.to_text()}


def as_tower(x) -> TowerNumber:
    if isinstance(x, TowerNumber):
        return x
    return TowerNumber(0, Fraction(x))


def compare(a: TowerNumber, b: TowerNumber) -> tuple:
    """``(sign, exact)``: sign in {-1, 0, 1} or None when undecidable.

    ``exact`` is False when a rational logarithm bracket was needed.
    """
    # state: ("iv", lo, hi) with lo None meaning -infinity, or ("tw", height, top)
    def start(x):
        h, top = x.height, x.top
        # materialize small integral towers so such comparisons are exact
        while h and top.denominator == 1 and 0 <= top <= MATERIALIZE_BITS:
            top = Fraction(2 ** int(top))
            h -= 1
        return ("iv", top, top) if h == 0 else ("tw", h, top)

    def log_of(s):
        nonlocal exact
        if s[0] == "tw":
            h = s[1] - 1
            return ("iv", s[2], s[2]) if h == 0 else ("tw", h, s[2])
        _, lo, hi = s
        if hi <= 0:
            return None  # the number is <= 0, below anything positive
        hlo, hhi = log2_bracket(hi)
        if lo is None or lo <= 0:
            exact = False
            return ("iv", None, hhi)
        llo, lhi = log2_bracket(lo)
        if llo != lhi or hlo != hhi:
            exact = False
        return ("iv", llo, hhi)

    a, b = as_tower(a), as_tower(b)
    exact = True
    x, y = start(a), start(b)
    while True:
        if x[0] == "iv" and y[0] == "iv":
            _, xl, xh = x
            _, yl, yh = y
            if xh < yl if yl is not None else False:
                return -1, exact
            if yh < xl if xl is not None else False:
                return 1, exact
            if xl is not None and xl == xh == yl == yh:
                return 0, exact
            return None, False
        if x[0] == "tw" and y[0] == "tw" and x[1] == y[1]:
            return (x[2] > y[2]) - (x[2] < y[2]), exact
        nx, ny = log_of(x), log_of(y)
        if nx is None and ny is None:
            # both values <= 0: compare directly (only possible for plain values)
            return (a.top > b.top) - (a.top < b.top), exact
        if nx is None:
            return -1, exact
        if ny is None:
            return 1, exact
        x, y = nx, ny
