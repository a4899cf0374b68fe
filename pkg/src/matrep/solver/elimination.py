"""Solving by successive resultant elimination and back substitution.

The highest-indexed variable that still occurs is eliminated first: a
pivot polynomial of least positive degree in it is paired with every other
polynomial through Sylvester resultants.  Any common zero of the input
projects to a common zero of the resultants, so enumerating the eliminated
system and extending each of its points by the roots of the pivot visits
every solution.  Points are produced in canonical lexicographic order,
which makes the answer identical to brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import (
    BoundViolated,
    CapExceeded,
    NoEliminableVariable,
    SearchSpaceTooLarge,
    VerificationFailed,
)
from ..gf import make_field
from ..poly import Polynomial, integer_content_and_primitive, make_monic, resultant
from ..search import compile_checks
from ..sysgen import ExpansionTooLarge, PolySystem, as_polynomial
from .types import SolutionPoint

MAX_Q = 2 ** 20


def _as_list(S):
    if isinstance(S, PolySystem):
        return list(S.polys), S.t
    eqs = list(S)
    return eqs, eqs[0].nvars


def _expanded(eqs):
    try:
        return [as_polynomial(f) for f in eqs]
    except ExpansionTooLarge as exc:
        raise SearchSpaceTooLarge(str(exc)) from exc


def leading_variable(polys) -> int | None:
    best = None
    for f in polys:
        for i, d in enumerate(f.degrees()):
            if d and (best is None or i > best):
                best = i
    return best


def _normalize(f: Polynomial, p: int) -> Polynomial:
    if p:
        return make_monic(f, p)
    return integer_content_and_primitive(f)[1]


def _inseparable_power(polys, var: int, p: int) -> int:
    """Largest power of p dividing every exponent of x_var (1 if p = 0)."""
    if not p:
        return 1
    g = 0
    for f in polys:
        for e in f.terms:
            g = gcd(g, e[var])
    q = 1
    while g and g % p == 0:
        q *= p
        g //= p
    return q


def _eliminate(polys, var: int, p: int):
    involved = [i for i, f in enumerate(polys) if f.degree(var) > 0]
    if not involved:
        raise NoEliminableVariable(f"no polynomial involves x{var + 1}")
    D = max(max(f.max_var_degree() for f in polys), 1)
    q = _inseparable_power([polys[i] for i in involved], var, p)
    work = [f.deflate(var, q) if q > 1 and i in involved else f for i, f in enumerate(polys)]

    order = sorted(involved, key=lambda i: (work[i].degree(var), i))
    first = None
    for piv in order:
        res = {}
        clean = True
        for j in involved:
            if j == piv:
                continue
            r = resultant(work[piv], work[j], var, p)
            res[j] = r
            if r.is_zero():
                # pivot and f_j share a factor; try another pivot first
                clean = False
                break
        if clean:
            chosen, results = piv, res
            break
        if first is None:
            first = piv
    else:
        # every pivot has a vanishing resultant: keep the first one and drop
        # the zero resultants (this only enlarges the eliminated variety)
        chosen = first
        results = {j: resultant(work[chosen], work[j], var, p) for j in involved if j != chosen}

    out = []
    seen = set()
    for j, f in enumerate(work):
        if j == chosen:
            continue
        g = results[j] if j in results else (f.mod(p) if p else f)
        if g.is_zero():
            continue
        g = _normalize(g, p)
        if g not in seen:
            seen.add(g)
            out.append(g)
    limit = 2 * D * D
    for g in out:
        if g.max_var_degree() > limit:
            raise BoundViolated(f"eliminated polynomial has a variable of degree > 2D^2 = {limit}")
    return out, work[chosen], q


def eliminate_variable(S, field_char: int, var: int | None = None):
    """Eliminate the leading variable (or ``var``).

    Returns ``(S', pivot, subst_power)``.  ``S'`` keeps the ambient ring but
    no longer involves the variable; when every exponent of the variable is
    divisible by ``q = subst_power`` the pivot is expressed in ``z = x^q``.
    """
    eqs, t = _as_list(S)
    polys = _expanded(eqs)
    if field_char:
        polys = [f.mod(field_char) for f in polys]
    if var is None:
        var = leading_variable(polys)
        if var is None:
            raise NoEliminableVariable("no polynomial has positive degree in any variable")
    out, pivot, q = _eliminate(polys, var, field_char)
    return PolySystem.from_polys(out, t) if out else PolySystem(out, t, [], []), pivot, q


@dataclass
class Level:
    var: int
    checks: list  # polynomials that involve var
    pivot: Polynomial  # in z = x_var^q
    q: int


@dataclass
class Chain:
    t: int
    p: int
    levels: list
    inconsistent: bool  # a nonzero constant appeared: no zero over the algebraic closure
    D: int


def build_chain(polys, t: int, p: int) -> Chain:
    D = max([f.max_var_degree() for f in polys] + [1])
    current = [f.mod(p) for f in polys]
    current = [f for f in current if not f.is_zero()]
    levels = []
    while True:
        if any(f.is_constant() for f in current):
            return Chain(t, p, levels, True, D)
        var = leading_variable(current)
        if var is None:
            return Chain(t, p, levels, False, D)
        checks = [f for f in current if f.degree(var) > 0]
        nxt, pivot, q = _eliminate(current, var, p)
        levels.append(Level(var, checks, pivot, q))
        current = nxt


def iter_chain_points(chain: Chain, field):
    """All common zeros over ``field`` in canonical lex order (as code tuples)."""
    if chain.inconsistent:
        return
    by_var = {lv.var: lv for lv in chain.levels}
    t = chain.t
    F = field
    codes = [0] * t
    compiled = {
        lv.var: [(_coeff_list(lv.pivot, lv.var)), [c for c in _compile_all(lv.checks, F)]]
        for lv in chain.levels
    }

    def candidates(i):
        lv = by_var.get(i)
        if lv is None:
            return range(F.q)
        coeffs, _ = compiled[i]
        uni = [F.eval_poly_codes(c, codes) for c in coeffs]
        while uni and not uni[-1]:
            uni.pop()
        if not uni:
            return range(F.q)  # pivot vanishes identically here
        roots = [z for z in range(F.q) if F.eval_univariate(uni, z) == 0]
        if lv.q > 1:
            e = 0
            qq = lv.q
            while qq > 1:
                qq //= F.p
                e += 1
            roots = sorted(F.pth_root_code(z, e) for z in roots)
        return roots

    def rec(i):
        if i == t:
            yield tuple(codes)
            return
        checks = compiled[i][1] if i in compiled else ()
        for x in candidates(i):
            codes[i] = x
            if all(c(codes) == 0 for c in checks):
                yield from rec(i + 1)
        codes[i] = 0

    yield from rec(0)


def _coeff_list(f: Polynomial, var: int):
    cs = f.coefficients_in(var)
    deg = max(cs)
    return [cs.get(k, Polynomial.zero(f.nvars)) for k in range(deg + 1)]


def _compile_all(polys, F):
    from ..search import _Compiled

    return [_Compiled(f, F) for f in polys]


def charp_bound_fits(t: int, D: int, cap: int) -> bool:
    """Is 2^(3*2^(t-1) - 2t - 1) * D^(3*2^(t-1) - 2) <= cap?"""
    D = max(D, 1)
    if t > 16:
        return False
    e1 = 3 * 2 ** (t - 1) - 2 * t - 1
    e2 = 3 * 2 ** (t - 1) - 2
    if e1 > cap.bit_length():
        return False
    return 2 ** e1 * D ** e2 <= cap


def _verify(eqs, t, F, codes):
    for _ready, pred in compile_checks(eqs, F):
        if not pred(codes):
            raise VerificationFailed("solution does not satisfy the original system")


def elimination_solve(S, p: int, k_cap: int, report=None):
    """Least point over GF(p^k), k = 1..k_cap, found by elimination.

    Returns None when no point can exist: either elimination produced a
    nonzero constant, or the proven extension-degree bound is within k_cap.
    Otherwise an empty search raises CapExceeded.  ``report`` (a dict) is
    filled with the chain length and the field degree that was used.
    """
    eqs, t = _as_list(S)
    polys = _expanded(eqs)
    chain = build_chain(polys, t, p)
    if report is not None:
        report["levels"] = [(lv.var, lv.q, len(lv.checks)) for lv in chain.levels]
        report["inconsistent_by_elimination"] = chain.inconsistent
    if chain.inconsistent:
        return None
    searched = 0
    for k in range(1, k_cap + 1):
        if p ** k > MAX_Q:
            break
        searched = k
        F = make_field(p, k)
        codes = next(iter_chain_points(chain, F), None)
        if codes is not None:
            _verify(eqs, t, F, codes)
            if report is not None:
                report["k"] = k
            return SolutionPoint.from_codes(F, codes)
    D = max([f.max_var_degree() for f in polys] + [1])
    if charp_bound_fits(t, D, searched):
        return None
    raise CapExceeded(
        f"no point over GF({p}^k) for k <= {searched}; the extension bound for t={t}, D={D} is larger",
        report,
    )
