"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A polynomial lives in an ambient ring Z[x1, ..., xt] with a fixed ``nvars``.
Exponent vectors are tuples; the canonical term order is graded reverse
lexicographic.  Arithmetic over GF(p) is available through the ``p``
arguments of :func:`mul`, :func:`divexact`, :func:`resultant` etc., which
reduce coefficients into ``[0, p)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, PolySyntaxError, VarAbsent, ZeroPolynomial


def grevlex_key(exps: Sequence[int]):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} does not have {nvars} entries")
                    self.terms[tuple(e)] = c

    # --- constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already canonical (no zeros)
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Polynomial":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "Polynomial":
        """The variable with 0-based index ``i``."""
        e = [0] * nvars
        e[i] = power
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return cls._raw(len(exps), {tuple(exps): c} if c else {})

    # --- basic queries --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self):
        """Max exponent sum, or ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree(self, var: int) -> int:
        """deg(f, x_var); 0 for the zero polynomial."""
        return max((e[var] for e in self.terms), default=0)

    def degrees(self) -> list[int]:
        out = [0] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > out[i]:
                    out[i] = k
        return out

    def max_var_degree(self) -> int:
        return max(self.degrees(), default=0)

    def height(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def variables(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees()) if d > 0]

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in descending graded reverse lex order."""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    # --- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars} variables")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def mod(self, p: int, centered: bool = False) -> "Polynomial":
        """Coefficients reduced into [0, p), or into (-p/2, p/2] if centered."""
        out = {}
        half = p // 2
        for e, c in self.terms.items():
            c %= p
            if c:
                out[e] = c - p if centered and c > half else c
        return Polynomial._raw(self.nvars, out)

    # --- structure in one variable -------------------------------------------

    def coefficients_in(self, var: int) -> dict[int, "Polynomial"]:
        """Map power k -> coefficient of x_var^k (same ambient ring, x_var-free)."""
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            groups.setdefault(k, {})[e[:var] + (0,) + e[var + 1:]] = c
        return {k: Polynomial._raw(self.nvars, t) for k, t in groups.items()}

    def leading_coefficient_in(self, var: int) -> "Polynomial":
        d = self.degree(var)
        return self.coefficients_in(var).get(d, Polynomial.zero(self.nvars))

    def deflate(self, var: int, q: int) -> "Polynomial":
        """Replace x_var^q by x_var; every x_var exponent must be divisible by q."""
        out = {}
        for e, c in self.terms.items():
            if e[var] % q:
                raise ValueError(f"exponent {e[var]} not divisible by {q}")
            out[e[:var] + (e[var] // q,) + e[var + 1:]] = c
        return Polynomial._raw(self.nvars, out)

    def drop_var(self, var: int) -> "Polynomial":
        """Remove x_var from the ambient ring; f must not depend on it."""
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                raise VarAbsent(f"polynomial still depends on x{var + 1}")
            out[e[:var] + e[var + 1:]] = c
        return Polynomial._raw(self.nvars - 1, out)

    def insert_var(self, var: int) -> "Polynomial":
        return Polynomial._raw(
            self.nvars + 1, {e[:var] + (0,) + e[var:]: c for e, c in self.terms.items()}
        )

    def monomial_gcd(self) -> tuple:
        """Exponent-wise minimum over all terms (the largest monomial factor)."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        g = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < g[i]:
                    g[i] = k
        return tuple(g)

    def divide_monomial(self, exps: Sequence[int]) -> "Polynomial":
        return Polynomial._raw(
            self.nvars,
            {tuple(a - b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def substitute(self, values: Mapping[int, int]) -> "Polynomial":
        """Substitute integer constants for some variables (ambient unchanged)."""
        out: dict = {}
        for e, c in self.terms.items():
            for i, v in values.items():
                if e[i]:
                    c *= v ** e[i]
                    if not c:
                        break
            if not c:
                continue
            e2 = tuple(0 if i in values else k for i, k in enumerate(e))
            v = out.get(e2, 0) + c
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        return Polynomial._raw(self.nvars, out)

    def evaluate_int(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            for x, k in zip(point, e):
                if k:
                    c *= x ** k
            total += c
        return total

    # --- text forms -----------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            factors = [names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.to_text()!r})"

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coeff": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nvars: int | None = None) -> "Polynomial":
        terms: dict = {}
        for item in data:
            e = tuple(int(x) for x in item["exps"])
            if nvars is None:
                nvars = len(e)
            terms[e] = terms.get(e, 0) + int(item["coeff"])
        if nvars is None:
            raise ValueError("cannot infer the number of variables of an empty polynomial")
        return cls(nvars, terms)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse the canonical text form (``2*x1^2*x3 - x2 + 7``)."""
    s = text.strip()
    if not s:
        raise PolySyntaxError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)
    # parts: ['', sign, body, sign, body, ...]
    if parts[0].strip():
        raise PolySyntaxError(f"unexpected text {parts[0]!r}")
    result = Polynomial.zero(nvars)
    for sign, body in zip(parts[1::2], parts[2::2]):
        body = body.strip()
        if not body:
            raise PolySyntaxError(f"dangling sign in {text!r}")
        coeff = 1
        exps = [0] * nvars
        for tok in body.split("*"):
            tok = tok.strip()
            if tok.isdigit():
                coeff *= int(tok)
                continue
            m = _FACTOR.match(tok)
            if not m:
                raise PolySyntaxError(f"bad factor {tok!r} in {text!r}")
            i = int(m.group(1)) - 1
            if not 0 <= i < nvars:
                raise PolySyntaxError(f"variable {tok!r} outside x1..x{nvars}")
            exps[i] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        result = result + Polynomial.monomial(exps, coeff)
    return result


# --- ring operations with optional modulus -----------------------------------

def mul(f: Polynomial, g: Polynomial, p: int = 0) -> Polynomial:
    if len(f.terms) > len(g.terms):
        f, g = g, f
    out: dict = {}
    get = out.get
    gt = list(g.terms.items())
    for e1, c1 in f.terms.items():
        for e2, c2 in gt:
            e = tuple([a + b for a, b in zip(e1, e2)])
            out[e] = get(e, 0) + c1 * c2
    if p:
        out = {e: c % p for e, c in out.items() if c % p}
    else:
        out = {e: c for e, c in out.items() if c}
    return Polynomial._raw(f.nvars, out)


def sub(f: Polynomial, g: Polynomial, p: int = 0) -> Polynomial:
    h = f - g
    return h.mod(p) if p else h


def divexact(f: Polynomial, g: Polynomial, p: int = 0) -> Polynomial:
    """Exact quotient f / g over Z (p = 0) or GF(p); raises NotDivisible."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lg, lc = g.leading_term()
    inv = pow(lc, -1, p) if p else None
    nv = f.nvars
    rem = dict(f.terms)
    quot: dict = {}
    gterms = list(g.terms.items())
    while rem:
        e = max(rem, key=grevlex_key)
        c = rem[e]
        shift = tuple(a - b for a, b in zip(e, lg))
        if min(shift) < 0:
            raise NotDivisible("leading monomial not divisible")
        if p:
            qc = c * inv % p
        else:
            qc, r = divmod(c, lc)
            if r:
                raise NotDivisible("coefficient not divisible")
        quot[shift] = qc
        for e2, c2 in gterms:
            e3 = tuple(a + b for a, b in zip(shift, e2))
            v = rem.get(e3, 0) - qc * c2
            if p:
                v %= p
            if v:
                rem[e3] = v
            else:
                rem.pop(e3, None)
    return Polynomial._raw(nv, quot)


def make_monic(f: Polynomial, p: int) -> Polynomial:
    """Scale so the grevlex leading coefficient is 1 over GF(p)."""
    f = f.mod(p)
    if f.is_zero():
        return f
    _, lc = f.leading_term()
    inv = pow(lc, -1, p)
    return Polynomial._raw(f.nvars, {e: c * inv % p for e, c in f.terms.items()})


def integer_content_and_primitive(f: Polynomial) -> tuple[int, Polynomial]:
    """Return ``(content, primitive)`` with ``f == content * primitive``.

    The primitive part has coprime coefficients and a positive grevlex
    leading coefficient; any sign lives in ``content``.
    """
    if f.is_zero():
        raise ZeroPolynomial("content of the zero polynomial is undefined")
    g = 0
    for c in f.terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    _, lc = f.leading_term()
    if lc < 0:
        g = -g
    return g, Polynomial._raw(f.nvars, {e: c // g for e, c in f.terms.items()})


def metrics(f: Polynomial) -> tuple:
    """``(total_degree, per_var_degree_max, height)``; total degree is None for 0."""
    return f.total_degree(), f.max_var_degree(), f.height()


# --- determinants -------------------------------------------------------------

def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_symbolic(entries: Sequence[Sequence[int]], nvars: int) -> Polynomial:
    """Leibniz expansion of the determinant of a matrix of distinct variables.

    ``entries[i][j]`` is the 0-based variable index placed at row i, column j.
    """
    r = len(entries)
    if r == 0 or any(len(row) != r for row in entries):
        raise ValueError("det_symbolic needs a non-empty square matrix")
    terms: dict = {}
    for perm in permutations(range(r)):
        e = [0] * nvars
        for i, j in enumerate(perm):
            e[entries[i][j]] += 1
        e = tuple(e)
        v = terms.get(e, 0) + _perm_sign(perm)
        if v:
            terms[e] = v
        else:
            terms.pop(e, None)
    return Polynomial._raw(nvars, terms)


def det_laplace(matrix: Sequence[Sequence[Polynomial]], p: int = 0) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoizing minors by column set."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> Polynomial:
        # determinant of rows row..n-1 restricted to the column bitmask cols
        if row == n:
            return Polynomial.constant(nv, 1)
        acc = Polynomial.zero(nv)
        sign = 1
        for j in range(n):
            if not cols >> j & 1:
                continue
            entry = matrix[row][j]
            if entry:
                term = mul(entry, minor(row + 1, cols & ~(1 << j)), p)
                acc = acc + term if sign > 0 else acc - term
                if p:
                    acc = acc.mod(p)
            sign = -sign
        return acc

    return minor(0, (1 << n) - 1)


def det_bareiss(matrix: Sequence[Sequence[Polynomial]], p: int = 0) -> Polynomial:
    """Fraction-free (Bareiss) determinant over Z[x] or GF(p)[x]."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    M = [[(e.mod(p) if p else e) for e in row] for row in matrix]
    sign = 1
    prev = Polynomial.constant(nv, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(nv)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                num = mul(row_i[j], pivot, p)
                if mik:
                    num = sub(num, mul(mik, row_k[j], p), p)
                row_i[j] = divexact(num, prev, p) if num else num
            row_i[k] = Polynomial.zero(nv)
        prev = pivot
    d = M[n - 1][n - 1]
    if sign < 0:
        d = -d
        if p:
            d = d.mod(p)
    return d


def sylvester_matrix(f: Polynomial, g: Polynomial, var: int) -> list[list[Polynomial]]:
    """Sylvester matrix of f and g with respect to x_var (entries are polynomials)."""
    m, n = f.degree(var), g.degree(var)
    size = m + n
    nv = f.nvars
    zero = Polynomial.zero(nv)
    fc, gc = f.coefficients_in(var), g.coefficients_in(var)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def resultant(f: Polynomial, g: Polynomial, var: int, p: int = 0) -> Polynomial:
    """Res_{x_var}(f, g) as the Sylvester determinant (over GF(p) when p > 0).

    The result keeps the ambient ring; it no longer depends on x_var.
    """
    if p:
        f, g = f.mod(p), g.mod(p)
    m, n = f.degree(var), g.degree(var)
    if f.is_zero() or m == 0:
        raise VarAbsent(f"first argument has degree 0 in x{var + 1}")
    if g.is_zero():
        return Polynomial.zero(f.nvars)
    if n == 0:
        # lc(f)^0 * g^m
        r = Polynomial.constant(f.nvars, 1)
        for _ in range(m):
            r = mul(r, g, p)
        return r
    return det_bareiss(sylvester_matrix(f, g, var), p)


def evaluate_mod(f: Polynomial, point, field):
    """Evaluate f at a point of FieldElements; coefficients go through Z -> GF(p)."""
    from .gf import FieldElement  # local import keeps the module graph acyclic

    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    for x in point:
        field.check_owner(x)
    codes = [x.code for x in point]
    return FieldElement(field, field.eval_poly_codes(f, codes))
