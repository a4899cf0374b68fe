"""Polynomial systems whose solutions are the representations of a matroid.

For a rank-r matroid on n elements we take an r x n matrix of
indeterminates.  Every dependent r-set contributes the determinant of its
columns (which must vanish); bases must have nonvanishing determinants,
expressed either by one equation ``z * prod(det_B) - 1`` (``single_dummy``)
or by one equation ``z_B * det_B - 1`` per basis (``per_basis_dummies``).

The basis product can be far too large to expand (the Fano plane has 28
cubic factors), so basis equations are kept factored as
:class:`ProductEquation` and only expanded on request.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence, Union

from .errors import (
    AllZerosSolution,
    BoundViolated,
    CapExceeded,
    InconsistentInput,
    RankZero,
    SearchSpaceTooLarge,
)
from .gf import make_field
from .matroid import Matroid, dependent_rsets, from_mask, to_mask
from .poly import Polynomial, det_laplace, det_symbolic, mul

SINGLE_DUMMY = "single_dummy"
PER_BASIS = "per_basis_dummies"
FORMULATIONS = (SINGLE_DUMMY, PER_BASIS)

EXPAND_TERM_LIMIT = 50_000


class ExpansionTooLarge(Exception):
    pass


class ProductEquation:
    """The equation ``const * x_dummy * prod(factors) - 1 = 0``."""

    __slots__ = ("nvars", "dummy", "factors", "const", "_expanded")

    def __init__(self, nvars: int, dummy: int, factors: Sequence[Polynomial], const: int = 1):
        self.nvars = nvars
        self.dummy = dummy
        self.factors = tuple(factors)
        self.const = const
        self._expanded = None

    def __repr__(self):
        return f"ProductEquation(dummy=x{self.dummy + 1}, {len(self.factors)} factors, const={self.const})"

    def total_degree(self) -> int:
        # Z[x] is an integral domain, so degrees of a product add up
        return 1 + sum(f.total_degree() for f in self.factors)

    def degrees(self) -> list[int]:
        out = [0] * self.nvars
        for f in self.factors:
            for i, d in enumerate(f.degrees()):
                out[i] += d
        out[self.dummy] += 1
        return out

    def max_var_degree(self) -> int:
        return max(self.degrees())

    def height_bound(self) -> int:
        """max(1, |const| * prod ||f||_1): ||fg||_inf <= ||f||_1 ||g||_1."""
        b = abs(self.const)
        for f in self.factors:
            b *= f.l1_norm()
        return max(b, 1)

    def expand(self, term_limit: int = EXPAND_TERM_LIMIT) -> Polynomial:
        if self._expanded is None:
            acc = Polynomial.monomial(
                tuple(1 if i == self.dummy else 0 for i in range(self.nvars)), self.const
            )
            # small factors first keeps intermediate products small
            for f in sorted(self.factors, key=lambda g: len(g.terms)):
                acc = mul(acc, f)
                if len(acc.terms) > term_limit:
                    raise ExpansionTooLarge(
                        f"basis product exceeds {term_limit} terms; kept factored"
                    )
            self._expanded = acc - 1
        return self._expanded

    def try_expand(self, term_limit: int = EXPAND_TERM_LIMIT):
        try:
            return self.expand(term_limit)
        except ExpansionTooLarge:
            return None

    def to_text(self, names=None) -> str:
        p = self.try_expand()
        if p is not None:
            return p.to_text(names)
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        pieces = ([str(self.const)] if self.const != 1 else []) + [names[self.dummy]]
        pieces += [f"({f.to_text(names)})" for f in self.factors]
        return "*".join(pieces) + " - 1"


Equation = Union[Polynomial, ProductEquation]


def as_polynomial(eq: Equation) -> Polynomial:
    return eq.expand() if isinstance(eq, ProductEquation) else eq


def eq_total_degree(eq: Equation):
    return eq.total_degree()


@dataclass
class PolySystem:
    polys: list
    t: int
    roles: list  # ("matrix_entry", row, col) | ("dummy", index)
    provenance: list  # ("dependent_set", X) | ("basis_product",) | ("basis_equation", B) | ...
    n: int = 0
    r: int = 0
    formulation: str = ""
    normalized: bool = False
    matrix: list = dc_field(default_factory=list)  # r x n grid of entry labels

    @classmethod
    def from_polys(cls, polys: Sequence[Polynomial], t: int | None = None) -> "PolySystem":
        polys = list(polys)
        if t is None:
            t = polys[0].nvars
        return cls(
            polys=polys,
            t=t,
            roles=[("variable", i + 1) for i in range(t)],
            provenance=[("input", i) for i in range(len(polys))],
        )

    @property
    def s(self) -> int:
        return len(self.polys)

    def expanded(self) -> list[Polynomial]:
        return [as_polynomial(eq) for eq in self.polys]

    def variable_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.t)]

    def role_names(self) -> list[str]:
        out = []
        for role in self.roles:
            if role[0] == "matrix_entry":
                out.append(f"x[{role[1]},{role[2]}]")
            elif role[0] == "dummy":
                out.append(f"z{role[1]}" if role[1] else "z")
            else:
                out.append(f"x{role[1]}")
        return out

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "roles": [list(r) for r in self.roles],
            "polys": [eq.to_text() for eq in self.polys],
            "provenance": [_prov_json(p) for p in self.provenance],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _prov_json(p):
    out = [p[0]]
    for x in p[1:]:
        out.append(list(x) if isinstance(x, tuple) else x)
    return out


# --- construction ---------------------------------------------------------------

def _lex_least_basis(M: Matroid) -> tuple[int, ...]:
    return min(from_mask(b) for b in M.bases)


def normal_form_pattern(M: Matroid):
    """Entry pattern of a normalized representation.

    Returns ``(B0, grid)`` where ``B0`` is the lexicographically least
    basis and ``grid[i][j]`` is 0, 1 or None (a free variable) for row i
    and element j+1.  Columns of B0 form the identity; entry (i, e) with
    e outside B0 is forced to zero unless B0 - B0[i] + e is a basis; the
    nonzero entries on a spanning forest of the row/column incidence graph
    are scaled to 1, which loses no representation.
    """
    B0 = _lex_least_basis(M)
    r, n = M.r, M.n
    grid = [[0] * n for _ in range(r)]
    for i, b in enumerate(B0):
        grid[i][b - 1] = 1
    parent = list(range(r + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in range(1, n + 1):
        if e in B0:
            continue
        for i, b in enumerate(B0):
            swapped = (set(B0) - {b}) | {e}
            if to_mask(swapped) not in M.bases:
                continue
            ra, rb = find(i), find(r + e - 1)
            if ra != rb:
                parent[ra] = rb
                grid[i][e - 1] = 1
            else:
                grid[i][e - 1] = None
    return B0, grid


def system_from_matroid(M: Matroid, formulation: str = SINGLE_DUMMY, normalize: bool = False) -> PolySystem:
    """The polynomial system attached to a matroid.

    Variables are the matrix entries in row-major order followed by the
    dummy variable(s).  With ``normalize=True`` the matrix is first put in
    the normal form of :func:`normal_form_pattern`, which leaves only the
    free entries as variables; the system is solvable over exactly the same
    fields.
    """
    if M.r < 1:
        raise RankZero("a rank-0 matroid has no associated polynomial system")
    if formulation not in FORMULATIONS:
        raise ValueError(f"unknown formulation {formulation!r}")
    r, n = M.r, M.n
    nbases = len(M.bases)
    ndummy = 1 if formulation == SINGLE_DUMMY else nbases

    roles: list = []
    labels = [[None] * n for _ in range(r)]
    if normalize:
        _, grid = normal_form_pattern(M)
        for i in range(r):
            for j in range(n):
                if grid[i][j] is None:
                    labels[i][j] = len(roles)
                    roles.append(("matrix_entry", i + 1, j + 1))
    else:
        for i in range(r):
            for j in range(n):
                labels[i][j] = len(roles)
                roles.append(("matrix_entry", i + 1, j + 1))
    nmat = len(roles)
    t = nmat + ndummy
    if formulation == SINGLE_DUMMY:
        roles.append(("dummy", 0))
    else:
        roles += [("dummy", i + 1) for i in range(nbases)]

    if normalize:
        cells = [
            [Polynomial.var(t, labels[i][j]) if labels[i][j] is not None else Polynomial.constant(t, grid[i][j])
             for j in range(n)]
            for i in range(r)
        ]
        matrix_labels = [
            [f"x{labels[i][j] + 1}" if labels[i][j] is not None else str(grid[i][j]) for j in range(n)]
            for i in range(r)
        ]

        def det_of(cols):
            return det_laplace([[cells[i][c - 1] for c in cols] for i in range(r)])
    else:
        matrix_labels = [[f"x{labels[i][j] + 1}" for j in range(n)] for i in range(r)]

        def det_of(cols):
            return det_symbolic([[labels[i][c - 1] for c in cols] for i in range(r)], t)

    polys: list = []
    prov: list = []
    for X in dependent_rsets(M):
        d = det_of(X)
        if normalize and d.is_zero():
            continue  # identically satisfied by the normal form
        polys.append(d)
        prov.append(("dependent_set", X))

    basis_sets = [from_mask(b) for b in M.sorted_bases()]
    if formulation == SINGLE_DUMMY:
        const, factors = 1, []
        for B in basis_sets:
            d = det_of(B)
            if d.is_constant():
                const *= d.constant_term()
            else:
                factors.append(d)
        polys.append(ProductEquation(t, nmat, factors, const))
        prov.append(("basis_product",))
    else:
        for idx, B in enumerate(basis_sets):
            d = det_of(B)
            if d.is_constant():
                polys.append(ProductEquation(t, nmat + idx, [], d.constant_term()))
            else:
                polys.append(ProductEquation(t, nmat + idx, [d]))
            prov.append(("basis_equation", B))

    return PolySystem(
        polys=polys,
        t=t,
        roles=roles,
        provenance=prov,
        n=n,
        r=r,
        formulation=formulation,
        normalized=normalize,
        matrix=matrix_labels,
    )


def matrix_point(S: PolySystem, matrix_codes: Sequence[Sequence[int]], field) -> list[int] | None:
    """Lift an r x n matrix (codes) to a point of S, solving for the dummies.

    Only entries that are variables of S are read, so for a normalized
    system the matrix should already be in normal form.  Returns None if
    some basis determinant vanishes.
    """
    point = [0] * S.t
    for idx, role in enumerate(S.roles):
        if role[0] == "matrix_entry":
            point[idx] = matrix_codes[role[1] - 1][role[2] - 1]
    from .search import _Compiled

    for eq in S.polys:
        if isinstance(eq, ProductEquation):
            v = field.from_int(eq.const)
            for f in eq.factors:
                v = field.mul(v, _Compiled(f, field)(point))
            if not v:
                return None
            point[eq.dummy] = field.inv(v)
    return point


# --- parameters -----------------------------------------------------------------

@dataclass(frozen=True)
class SystemParams:
    s: int
    t: int
    d: int
    D: int
    H: int
    h: int
    H_exact: bool = True

    def as_dict(self) -> dict:
        return {
            "s": self.s, "t": self.t, "d": self.d, "D": self.D,
            "H": str(self.H), "h": self.h, "H_exact": self.H_exact,
        }


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 0 else 0


def system_metrics(S: PolySystem) -> SystemParams:
    d = D = 0
    H, exact = 0, True
    for eq in S.polys:
        d = max(d, eq.total_degree() or 0)
        D = max(D, eq.max_var_degree())
        if isinstance(eq, ProductEquation):
            p = eq.try_expand()
            if p is None:
                H = max(H, eq.height_bound())
                exact = False
            else:
                H = max(H, p.height())
        else:
            H = max(H, eq.height())
    return SystemParams(S.s, S.t, d, D, H, ceil_log2(H), exact)


def params(S: PolySystem, n: int | None = None) -> SystemParams:
    """Exact s, t, d, D and H (or a rigorous upper bound on H when the basis
    product is too large to expand), checked against the proven bounds for
    matroid systems: s <= 2^n, t <= n^2 + 1, d <= n 2^n, H <= n^(n 2^n),
    D <= C(n, r)."""
    P = system_metrics(S)
    n = n if n is not None else S.n
    r = S.r
    checks = [
        ("s <= 2^n", P.s <= 2 ** n),
        ("d <= n*2^n", P.d <= n * 2 ** n),
        ("H <= n^(n*2^n)", P.H <= n ** (n * 2 ** n)),
    ]
    if r:
        checks.append(("D <= C(n,r)", P.D <= comb(n, r)))
    if S.formulation == PER_BASIS:
        # one dummy per basis: the n^2 + 1 count only covers the single dummy
        checks.append(("t <= r*n + C(n,r)", P.t <= r * n + comb(n, r)))
    else:
        checks.append(("t <= n^2 + 1", P.t <= n * n + 1))
    for label, ok in checks:
        if not ok:
            raise BoundViolated(f"system parameter bound violated: {label} ({P})")
    return P


# --- reduction ------------------------------------------------------------------

VARIETY_POINT_LIMIT = 10 ** 6


def _leading_var(polys: Sequence[Polynomial]) -> int | None:
    best = None
    for f in polys:
        for i, d in enumerate(f.degrees()):
            if d and (best is None or i > best):
                best = i
    return best


def _sample_variety(polys, nvars, p, k_max):
    from .search import iter_points

    out = {}
    for k in range(1, k_max + 1):
        F = make_field(p, k)
        if F.q ** nvars > VARIETY_POINT_LIMIT:
            raise SearchSpaceTooLarge(f"{F.q}^{nvars} points exceed the sampling guard")
        out[F] = list(iter_points(polys, nvars, F))
    return out


def _vanishes_on(f: Polynomial, variety) -> bool:
    for F, points in variety.items():
        for pt in points:
            if F.eval_poly_codes(f, pt):
                return False
    return True


def _strip_monomial_factors(polys, nvars, p, k_max, variety):
    """Drop monomial factors x^a from polynomials when the system stays consistent."""
    polys = list(polys)
    for idx, f in enumerate(polys):
        g = f.monomial_gcd()
        if not any(g):
            continue
        candidate = f.divide_monomial(g)
        trial = polys[:idx] + [candidate] + polys[idx + 1:]
        sample = _sample_variety(trial, nvars, p, k_max)
        if any(sample.values()):
            polys = trial
            variety = sample
    return polys, variety


def reduce_system(S, field, closure_degree_cap: int = 1) -> PolySystem:
    """Desk-scale reduction over a finite field.

    "a_d lies in the radical" is replaced by "a_d vanishes at every point of
    the variety enumerated over GF(p^k), k <= cap" (a semi-decision).  A
    polynomial whose leading coefficient vanishes there is split into its
    leading coefficient and the rest; monomial factors are stripped when the
    sampled variety stays non-empty.  The sampled variety of the output is
    contained in that of the input.
    """
    if isinstance(S, PolySystem):
        polys, t = S.expanded(), S.t
        base_roles = S.roles
    else:
        polys = list(S)
        t = polys[0].nvars
        base_roles = [("variable", i + 1) for i in range(t)]
    p = field.p
    polys = [f.mod(p) for f in polys]
    polys = [f for f in polys if not f.is_zero()]
    if any(f.is_constant() for f in polys):
        raise InconsistentInput("system contains a nonzero constant")
    if all(f.constant_term() == 0 for f in polys):
        raise AllZerosSolution("the all-zeros point solves the system")
    variety = _sample_variety(polys, t, p, closure_degree_cap)
    if not any(variety.values()):
        raise CapExceeded(f"no point over GF({p}^k) for k <= {closure_degree_cap}")

    polys, variety = _strip_monomial_factors(polys, t, p, closure_degree_cap, variety)
    while True:
        lead = _leading_var(polys)
        if lead is None:
            break
        for idx, f in enumerate(polys):
            d = f.degree(lead)
            if d == 0:
                continue
            a_d = f.coefficients_in(lead)[d]
            if _vanishes_on(a_d, variety):
                rest = (f - mul(a_d, Polynomial.var(t, lead, d))).mod(p)
                new = [g for g in (a_d, rest) if not g.is_zero() and g not in polys]
                polys = polys[:idx] + new + polys[idx + 1:]
                # each sampled point kills a_d and f, hence rest: variety unchanged
                polys, variety = _strip_monomial_factors(polys, t, p, closure_degree_cap, variety)
                break
        else:
            break
    return PolySystem(
        polys=[f.mod(p, centered=True) for f in polys],
        t=t,
        roles=list(base_roles),
        provenance=[("reduced", i) for i in range(len(polys))],
    )
