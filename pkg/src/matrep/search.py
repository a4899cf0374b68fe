"""Exhaustive point search over a finite field with early pruning.

Points are enumerated depth first in lexicographic order of the canonical
element order, variable 0 first.  An equation is checked as soon as every
variable it mentions is assigned, so the enumeration visits exactly the
points a full scan would accept, in the same order, just faster.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .poly import Polynomial


class _Compiled:
    """A polynomial specialised to one field: list of (coef code, ((var, exp), ...))."""

    __slots__ = ("terms", "ready", "field")

    def __init__(self, f: Polynomial, field):
        self.field = field
        terms = []
        for e, c in f.terms.items():
            cc = field.from_int(c)
            if cc:
                terms.append((cc, tuple((i, k) for i, k in enumerate(e) if k)))
        self.terms = terms
        self.ready = max((i for _, mono in terms for i, _k in mono), default=-1)

    def __call__(self, codes: Sequence[int]) -> int:
        F = self.field
        mul, add, pw = F.mul, F.add, F.pow
        total = 0
        for c, mono in self.terms:
            v = c
            for i, k in mono:
                x = codes[i]
                if not x:
                    v = 0
                    break
                v = mul(v, x if k == 1 else pw(x, k))
            if v:
                total = add(total, v)
        return total


def compile_checks(equations, field):
    """Turn equations into ``(ready_var, predicate)`` pairs.

    ``predicate(codes)`` is True when the equation can still hold.  A
    ready_var of -1 means the check involves no variable at all.
    """
    from .sysgen import ProductEquation  # avoid import cycle

    checks = []
    for eq in equations:
        if isinstance(eq, ProductEquation):
            factors = [_Compiled(f, field) for f in eq.factors]
            const = field.from_int(eq.const)
            dummy = eq.dummy
            for fc in factors:
                # a vanishing factor kills the product, so dummy*prod - 1 = -1 != 0
                checks.append((fc.ready, lambda codes, fc=fc: fc(codes) != 0))
            ready = max([dummy] + [fc.ready for fc in factors])

            def full(codes, factors=factors, const=const, dummy=dummy, F=field):
                v = F.mul(const, codes[dummy])
                for fc in factors:
                    if not v:
                        break
                    v = F.mul(v, fc(codes))
                return v == F.one

            checks.append((ready, full))
        else:
            fc = _Compiled(eq, field)
            checks.append((fc.ready, lambda codes, fc=fc: fc(codes) == 0))
    return checks


def iter_points(equations, nvars: int, field, domains=None) -> Iterator[tuple[int, ...]]:
    """Yield every common zero (as a tuple of codes) in canonical lex order.

    ``domains`` optionally restricts variable i to the codes in domains[i].
    """
    checks = compile_checks(equations, field)
    by_var: list[list] = [[] for _ in range(nvars)]
    for ready, pred in checks:
        if ready < 0:
            if not pred(()):
                return
        else:
            by_var[ready].append(pred)
    doms = domains or [range(field.q)] * nvars
    if nvars == 0:
        yield ()
        return
    codes = [0] * nvars
    # explicit stack of iterators avoids Python recursion overhead
    iters = [iter(doms[0])]
    depth = 0
    while depth >= 0:
        try:
            x = next(iters[depth])
        except StopIteration:
            iters.pop()
            depth -= 1
            continue
        codes[depth] = x
        if all(pred(codes) for pred in by_var[depth]):
            if depth == nvars - 1:
                yield tuple(codes)
            else:
                depth += 1
                iters.append(iter(doms[depth]))


def first_point(equations, nvars: int, field, domains=None):
    return next(iter_points(equations, nvars, field, domains), None)
