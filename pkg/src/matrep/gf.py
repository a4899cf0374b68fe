"""Finite fields GF(p^k) built from the lexicographically least irreducible modulus.

Elements are handled internally as integer *codes*.  The code of the element
with coefficient vector ``[c0, c1, ..., c_{k-1}]`` (little-endian in the
modulus root) is ``c0*p^(k-1) + c1*p^(k-2) + ... + c_{k-1}``, so numeric
order of codes is the canonical element order (lexicographic on the
coefficient vector, low degree first).  ``range(q)`` enumerates the field
in canonical order.
"""

from __future__ import annotations

import threading
from functools import lru_cache, total_ordering
from itertools import product
from typing import Sequence

from .errors import (
    DivisionByZero,
    EmbeddingUnavailable,
    FieldMismatch,
    NotPrime,
    TooLarge,
)

MAX_ORDER = 1 << 20
_TABLE_LIMIT = 1 << 16  # log/exp tables up to this order
_ADD_TABLE_LIMIT = 1 << 10


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (fine below 2^32)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- dense univariate polynomials over GF(p), little-endian lists -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            s = i - dm
            for j in range(dm + 1):
                a[s + j] = (a[s + j] - c * m[j]) % p
    return _trim([x % p for x in a[:dm]] if dm else [])


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    if k <= 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _polymod(m, divisor, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k (low degree compared first)."""
    for low in product(range(p), repeat=k):
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


def _poly_str(m: Sequence[int]) -> str:
    parts = []
    for i in range(len(m) - 1, -1, -1):
        c = m[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts) or "0"


class FieldSpec:
    """GF(p^k) defined by a monic irreducible modulus of degree k over GF(p).

    Use :func:`make_field` rather than constructing directly; it validates
    the parameters and caches one instance per ``(p, k)``.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self._lock = threading.Lock()
        self._tables = None
        self._add = None
        self._embed_cache: dict = {}
        self._pow_p = [p ** i for i in range(k)]

    # --- identity -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.name})"

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.k})"

    def to_text(self) -> str:
        return f"{self.name}/{_poly_str(self.modulus)}"

    # --- code <-> coefficient vector ------------------------------------------

    def to_vec(self, code: int) -> list[int]:
        out = [0] * self.k
        for i in range(self.k - 1, -1, -1):
            code, out[i] = divmod(code, self.p)
        return out

    def from_vec(self, vec: Sequence[int]) -> int:
        code = 0
        for c in vec:
            code = code * self.p + (c % self.p)
        return code

    @property
    def one(self) -> int:
        return self._pow_p[self.k - 1]

    def from_int(self, c: int) -> int:
        """Image of an integer under Z -> GF(p) inside GF(p^k)."""
        return (c % self.p) * self._pow_p[self.k - 1]

    def generator_root(self) -> int:
        """The class of x modulo the modulus (a root of the modulus)."""
        if self.k == 1:
            return 0
        return self._pow_p[self.k - 2]

    # --- arithmetic on codes --------------------------------------------------

    def _vec_mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        r = _polymod(prod, self.modulus, p)
        return r + [0] * (self.k - len(r))

    def _build_tables(self):
        with self._lock:
            if self._tables is not None:
                return
            q = self.q
            if self.k == 1:
                self._tables = "prime"
                return
            # prefer x as generator: multiplying by it is a shift
            order = q - 1
            facs = prime_factors(order)
            one = [1] + [0] * (self.k - 1)

            def vec_pow(v, e):
                r, b = one, v
                while e:
                    if e & 1:
                        r = self._vec_mul(r, b)
                    e >>= 1
                    if e:
                        b = self._vec_mul(b, b)
                return r

            gen = None
            for code in [self.generator_root()] + list(range(1, q)):
                v = self.to_vec(code)
                if all(vec_pow(v, order // f) != one for f in facs):
                    gen = v
                    break
            exp = [0] * (2 * order)
            log = [0] * q
            cur = one
            for i in range(order):
                c = self.from_vec(cur)
                exp[i] = c
                log[c] = i
                cur = self._vec_mul(cur, gen)
            for i in range(order, 2 * order):
                exp[i] = exp[i - order]
            self._tables = (exp, log)

    def _ensure(self):
        if self._tables is None:
            if self.q <= _TABLE_LIMIT or self.k == 1:
                self._build_tables()
            else:
                self._tables = "direct"
        if self._add is None and self.k > 1 and self.p != 2 and self.q <= _ADD_TABLE_LIMIT:
            q = self.q
            self._add = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is None:
            self._ensure()
            if self._add is None:
                return self._add_digits(a, b)
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_vec([-c for c in self.to_vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        t = self._tables
        if t is None:
            self._ensure()
            t = self._tables
        if t == "direct":
            return self.from_vec(self._vec_mul(self.to_vec(a), self.to_vec(b)))
        exp, log = t
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero(f"inverse of zero in {self.name}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        if e == 0:
            return self.one
        if not a:
            return 0
        t = self._tables
        if t is None:
            self._ensure()
            t = self._tables
        if t != "direct":
            exp, log = t
            return exp[log[a] * e % (self.q - 1)]
        r, b = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            e >>= 1
            if e:
                b = self.mul(b, b)
        return r

    def frobenius(self, a: int, e: int = 1) -> int:
        """a^(p^e)."""
        return self.pow(a, self.p ** (e % self.k))

    def pth_root_code(self, a: int, e: int) -> int:
        # Frobenius has order k, so its inverse e-th power is the (k - e mod k)-th power
        return self.frobenius(a, (self.k - e % self.k) % self.k)

    def eval_poly_codes(self, f, codes: Sequence[int]) -> int:
        """Evaluate an integer polynomial at a point given by codes."""
        total = 0
        for e, c in f.terms.items():
            v = self.from_int(c)
            if not v:
                continue
            for x, k in zip(codes, e):
                if k:
                    v = self.mul(v, self.pow(x, k))
                    if not v:
                        break
            total = self.add(total, v)
        return total

    def eval_univariate(self, coeffs: Sequence[int], x: int) -> int:
        """Horner evaluation; coeffs are codes, low degree first."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # --- elements -------------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Element from an int (via Z -> GF(p)) or a coefficient vector."""
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        vec = list(value)
        if len(vec) != self.k:
            raise ValueError(f"need {self.k} coefficients")
        return FieldElement(self, self.from_vec(vec))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def elements(self):
        return (FieldElement(self, c) for c in range(self.q))

    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator_root())

    def check_owner(self, x: "FieldElement") -> None:
        if x.field != self:
            raise FieldMismatch(f"element of {x.field.name} used in {self.name}")

    def parse_element(self, text: str) -> "FieldElement":
        body, _, name = text.partition("@")
        if name and name.strip() != self.name:
            raise FieldMismatch(f"element of {name} parsed into {self.name}")
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad element text {text!r}")
        vec = [int(x) for x in body[1:-1].split(",") if x.strip()]
        return self(vec)

    # --- subfield embeddings --------------------------------------------------

    def embedding_from(self, small: "FieldSpec"):
        """Map codes of ``small`` to codes of this field.

        Sends the modulus root of ``small`` to the least root (canonical
        order) of its modulus in this field.
        """
        if small.p != self.p or self.k % small.k:
            raise EmbeddingUnavailable(f"{small.name} does not embed in {self.name}")
        key = (small.k, small.modulus)
        with self._lock:
            cached = self._embed_cache.get(key)
        if cached is not None:
            return cached
        if small.k == 1:
            table = [self.from_int(c) for c in range(small.q)]
        else:
            mcodes = [self.from_int(c) for c in small.modulus]
            alpha = next(x for x in range(self.q) if self.eval_univariate(mcodes, x) == 0)
            powers = [self.one]
            for _ in range(small.k - 1):
                powers.append(self.mul(powers[-1], alpha))
            table = []
            for code in range(small.q):
                acc = 0
                for c, pw in zip(small.to_vec(code), powers):
                    if c:
                        acc = self.add(acc, self.mul(self.from_int(c), pw))
                table.append(acc)
        with self._lock:
            self._embed_cache.setdefault(key, table)
        return table

    def embed(self, x: "FieldElement") -> "FieldElement":
        if x.field == self:
            return x
        return FieldElement(self, self.embedding_from(x.field)[x.code])


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** k > MAX_ORDER:
        raise TooLarge(f"GF({p}^{k}) exceeds the 2^20 element cap")
    return FieldSpec(p, k, least_irreducible(p, k))


def field_of_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    for p in prime_factors(q)[:1]:
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r == 1:
            return make_field(p, k)
    raise NotPrime(f"{q} is not a prime power")


def prime_powers(limit: int) -> list[int]:
    """Prime powers 2, 3, 4, 5, 7, 8, 9, ... up to ``limit``."""
    out = []
    for q in range(2, limit + 1):
        fs = prime_factors(q)
        if len(fs) == 1:
            out.append(q)
    return out


@total_ordering
class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_vec(self.code)

    def _other(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return None
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
        return other.code

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.code, o))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.code == other.code

    def __lt__(self, other):
        if not isinstance(other, FieldElement) or other.field != self.field:
            return NotImplemented
        return self.code < other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def to_text(self) -> str:
        return "[" + ",".join(map(str, self.coeffs)) + "]@" + self.field.name

    def __repr__(self):
        return self.to_text()


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Field operation by name: ``add``, ``sub``, ``mul`` or ``div``."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    return ops[op](b)


def pth_root(a: FieldElement, e: int) -> FieldElement:
    """The unique b with b^(p^e) == a."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return FieldElement(a.field, a.field.pth_root_code(a.code, e))


def univariate_roots(coeffs: Sequence[FieldElement], search_field: FieldSpec) -> list[FieldElement]:
    """All roots of sum(coeffs[i] x^i) in ``search_field``, canonical order.

    Coefficients may live in any subfield of ``search_field``; they are
    embedded first.  Exhaustive scan.
    """
    codes = [search_field.embed(c).code for c in coeffs]
    while codes and codes[-1] == 0:
        codes.pop()
    if not codes:
        raise ValueError("the zero polynomial has every element as a root")
    ev = search_field.eval_univariate
    return [FieldElement(search_field, x) for x in range(search_field.q) if ev(codes, x) == 0]
