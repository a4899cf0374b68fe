"""Nullstellensatz certificates: cofactors g_j with sum g_j f_j = 1.

For a cofactor degree bound delta the unknowns are the coefficients of
every monomial of degree <= delta in every g_j; matching coefficients of
sum g_j f_j against 1 gives a linear system, solved exactly over Q or
GF(p).  delta is raised one step at a time up to the cap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd, lcm

from ..errors import CapExceeded, SearchSpaceTooLarge
from ..linalg import solve_mod_p, solve_rational
from ..poly import Polynomial, grevlex_key, mul
from .elimination import _as_list, _expanded
from .types import CertificateReport


def monomials_up_to(t: int, delta: int) -> list[tuple]:
    """Exponent vectors of total degree <= delta, ascending in grevlex."""
    out = []
    for deg in range(delta + 1):
        for combo in combinations_with_replacement(range(t), deg):
            e = [0] * t
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    out.sort(key=grevlex_key)
    return out


def _domain(coefficient_domain):
    if coefficient_domain in (0, None, "QQ", "Q", "rationals"):
        return 0
    p = getattr(coefficient_domain, "p", coefficient_domain)
    return int(p)


def _build(polys, t, delta, p):
    monos = monomials_up_to(t, delta)
    nm = len(monos)
    rows: dict[tuple, dict] = {(0,) * t: {}}
    for j, f in enumerate(polys):
        terms = list(f.terms.items())
        for mi, m in enumerate(monos):
            col = j * nm + mi
            for e, c in terms:
                key = tuple(a + b for a, b in zip(e, m))
                row = rows.setdefault(key, {})
                row[col] = row.get(col, 0) + c
    keys = sorted(rows, key=grevlex_key)
    zero = (0,) * t
    rhs = [1 if k == zero else 0 for k in keys]
    return monos, [rows[k] for k in keys], rhs


def _cofactors(solution, monos, s, t, scale=1):
    nm = len(monos)
    out = []
    for j in range(s):
        terms = {}
        for mi, m in enumerate(monos):
            v = solution[j * nm + mi] * scale
            if v:
                terms[m] = v
        out.append(Polynomial(t, terms))
    return out


def verify_certificate(polys, numerators, p: int = 0, witness: int = 1) -> bool:
    """Check sum numerators[j] * polys[j] == witness (mod p when p > 0)."""
    t = polys[0].nvars
    total = Polynomial.zero(t)
    for g, f in zip(numerators, polys):
        total = total + mul(g, f, p)
    if p:
        total = total.mod(p)
        return total == Polynomial.constant(t, witness % p)
    return total == Polynomial.constant(t, witness)


def default_subsystems(S) -> list[list[int]]:
    """Subsets of equations to try, smallest first, ending with all of them.

    A certificate for a subset of the equations is one for the whole system
    (the other cofactors are zero).  For matroid systems we try the
    dependent-set polynomials alone, then together with each single basis
    equation, then everything.
    """
    eqs, _t = _as_list(S)
    everything = list(range(len(eqs)))
    prov = getattr(S, "provenance", None)
    if not prov:
        return [everything]
    dep = [i for i, pv in enumerate(prov) if pv[0] == "dependent_set"]
    basis = [i for i, pv in enumerate(prov) if pv[0] in ("basis_equation", "basis_product")]
    out = []
    if dep:
        out.append(dep)
    if len(basis) > 1:
        out += [dep + [b] for b in basis]
    out.append(everything)
    seen, uniq = set(), []
    for sub in out:
        key = tuple(sub)
        if key not in seen:
            seen.add(key)
            uniq.append(sub)
    return uniq


def _restrict(polys):
    """Re-index polynomials onto the variables they actually use."""
    t = polys[0].nvars
    used = sorted({i for f in polys for i in f.variables()})
    if len(used) == t:
        return polys, used
    out = [Polynomial(len(used), {tuple(e[i] for i in used): c for e, c in f.terms.items()}) for f in polys]
    return out, used


def _lift(g: Polynomial, used, t) -> Polynomial:
    terms = {}
    for e, c in g.terms.items():
        full = [0] * t
        for i, k in zip(used, e):
            full[i] = k
        terms[tuple(full)] = c
    return Polynomial(t, terms)


def nullstellensatz_certificate(
    S, coefficient_domain=0, degree_cap: int = 6, subsystems=None, max_columns: int = 200_000,
    max_entries: int = 100_000, max_dense: int = 2_000_000,
) -> CertificateReport:
    """Search cofactors of degree <= delta for delta = 0..degree_cap.

    ``coefficient_domain`` is 0 / "QQ" for the rationals or a prime p (or a
    prime field).  ``subsystems`` lists index sets of equations to try at
    each delta (default: every equation at once); cofactor monomials only
    use the variables of the subsystem.  Linear systems with more than
    ``max_columns`` unknowns or ``max_entries`` nonzero coefficients are
    skipped and recorded with ``rows = None``.  Over Q the solver is dense,
    so systems with more than ``max_dense`` matrix cells are skipped too.

    Returns a CertificateReport whose cofactors refer to the full system;
    raises CapExceeded (with the unsuccessful report attached) when no
    certificate exists up to the cap.
    """
    if degree_cap < 0:
        raise ValueError("degree_cap must be non-negative")
    p = _domain(coefficient_domain)
    eqs, t = _as_list(S)
    expanded: dict[int, Polynomial | None] = {}

    def get(i):
        # expand lazily: a huge basis product is only needed if a subsystem uses it
        if i not in expanded:
            try:
                f = _expanded([eqs[i]])[0]
                expanded[i] = f.mod(p) if p else f
            except SearchSpaceTooLarge:
                expanded[i] = None
        return expanded[i]

    if subsystems is None:
        subsystems = [list(range(len(eqs)))]
    report = CertificateReport(
        domain="QQ" if not p else f"GF({p})",
        consistent_over_rationals=None,
        cofactor_degree=None,
        degree_cap=degree_cap,
    )
    for delta in range(degree_cap + 1):
        for sub in subsystems:
            if any(get(i) is None for i in sub):
                report.matrix_shapes.append((delta, None, None, len(sub)))
                continue
            idx = [i for i in sub if not get(i).is_zero()]
            if not idx:
                continue
            local, used = _restrict([get(i) for i in idx])
            s, tl = len(local), len(used)
            ncols = s * comb(delta + tl, tl)
            nnz = sum(len(f.terms) for f in local) * (ncols // s)
            if ncols > max_columns or nnz > max_entries:
                report.matrix_shapes.append((delta, None, ncols, len(idx)))
                continue
            monos, rows, rhs = _build(local, tl, delta, p)
            if not p and len(rows) * ncols > max_dense:
                report.matrix_shapes.append((delta, None, ncols, len(idx)))
                continue
            report.matrix_shapes.append((delta, len(rows), ncols, len(idx)))
            found = _solve(local, monos, rows, rhs, ncols, p)
            if found is None:
                continue
            numerators, a = found
            lifted = [_lift(g, used, t) for g in numerators]
            if not verify_certificate([get(i) for i in idx], lifted, p, a):
                raise AssertionError("certificate failed re-verification")
            full = [Polynomial.zero(t) for _ in eqs]
            for i, g in zip(idx, lifted):
                full[i] = g
            report.numerators = full
            report.support = idx
            if not p:
                report.integer_witness = a
                report.consistent_over_rationals = False
            report.cofactor_degree = delta
            return report
    raise CapExceeded(f"no certificate with cofactor degree <= {degree_cap}", report)


# A system consistent over Q stays consistent modulo every prime that divides
# no denominator of a solution, so a failed solve modulo this prime lets us skip
# the slow exact solve.  At worst a certificate is missed, never invented.
FILTER_PRIME = 2 ** 61 - 1


def _solve(polys, monos, rows, rhs, ncols, p):
    s, t = len(polys), polys[0].nvars
    if p:
        z = solve_mod_p(rows, rhs, ncols, p)
        if z is None:
            return None
        return _cofactors(z, monos, s, t), 1
    if solve_mod_p(rows, rhs, ncols, FILTER_PRIME) is None:
        return None
    dense = [[row.get(c, 0) for c in range(ncols)] for row in rows]
    z = solve_rational(dense, rhs)
    if z is None:
        return None
    a = 1
    for v in z:
        a = lcm(a, Fraction(v).denominator)
    nums = [Polynomial(t, {e: int(c) for e, c in g.terms.items()}) for g in _cofactors(z, monos, s, t, scale=a)]
    # shrink the witness when every numerator shares a factor with it
    g = a
    for f in nums:
        for c in f.terms.values():
            g = gcd(g, c)
    if g > 1:
        a //= g
        nums = [Polynomial(t, {e: c // g for e, c in f.terms.items()}) for f in nums]
    return nums, a
