import json
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from matrep.errors import AllZerosSolution, CapExceeded, InconsistentInput, RankZero
from matrep.gf import make_field
from matrep.matroid import catalog, validate_bases
from matrep.poly import Polynomial, parse_polynomial
from matrep.search import iter_points
from matrep.solver import solve_in_field
from matrep.sysgen import (
    PER_BASIS,
    SINGLE_DUMMY,
    PolySystem,
    ProductEquation,
    matrix_point,
    params,
    reduce_system,
    system_from_matroid,
)

SMALL = ["uniform:1:2", "uniform:1:3", "uniform:2:3", "uniform:2:4", "with_loops:uniform:1:2:1", "with_loops:uniform:2:3:1"]
N_LE_7 = ["uniform:1:2", "uniform:2:4", "uniform:2:5", "uniform:2:6", "uniform:2:7", "uniform:3:6",
          "uniform:3:7", "fano", "nonfano", "with_loops:uniform:2:4:1", "with_loops:uniform:2:5:2"]


def test_uniform_12_system():
    S = system_from_matroid(catalog("uniform:1:2"), SINGLE_DUMMY)
    assert S.t == 3 and S.s == 1
    assert S.expanded() == [parse_polynomial("x1*x2*x3 - 1", 3)]
    P = params(S, 2)
    assert (P.s, P.t, P.d, P.D, P.H) == (1, 3, 3, 1, 1)


def test_three_element_example():
    M = validate_bases(3, 2, [(1, 2), (1, 3)])
    S = system_from_matroid(M)
    # variables x[1,1..3], x[2,1..3], z
    assert S.t == 7
    assert S.provenance[0] == ("dependent_set", (2, 3))
    assert S.polys[0] == parse_polynomial("x2*x6 - x3*x5", 7)
    eq = S.polys[1]
    assert isinstance(eq, ProductEquation)
    d12 = parse_polynomial("x1*x5 - x2*x4", 7)
    d13 = parse_polynomial("x1*x6 - x3*x4", 7)
    assert eq.expand() == Polynomial.var(7, 6) * d12 * d13 - 1


def test_fano_system_shape():
    S = system_from_matroid(catalog("fano"))
    assert S.s == 8 and S.t == 22
    assert [p[0] for p in S.provenance] == ["dependent_set"] * 7 + ["basis_product"]
    P = params(S, 7)
    assert P.D <= 28 and P.d == 85


def test_per_basis_shape():
    M = catalog("uniform:2:4")
    S = system_from_matroid(M, PER_BASIS)
    assert S.t == 8 + 6 and S.s == 6
    assert all(pv[0] == "basis_equation" for pv in S.provenance)
    assert S.role_names()[-1] == "z6"


def test_rank_zero_rejected():
    with pytest.raises(RankZero):
        system_from_matroid(validate_bases(2, 0, [()]))


def test_json_shape_is_deterministic():
    S = system_from_matroid(catalog("uniform:2:3"))
    data = json.loads(S.dumps())
    assert list(data) == ["t", "roles", "polys", "provenance"]
    assert data["roles"][0] == ["matrix_entry", 1, 1]
    assert data["roles"][-1] == ["dummy", 0]
    assert S.dumps() == system_from_matroid(catalog("uniform:2:3")).dumps()


@pytest.mark.parametrize("spec", N_LE_7)
def test_parameter_bounds(spec):
    M = catalog(spec)
    n = M.n
    for form in (SINGLE_DUMMY, PER_BASIS):
        for norm in (False, True):
            S = system_from_matroid(M, form, norm)
            P = params(S, n)
            assert P.s <= 2 ** n and P.d <= n * 2 ** n
            assert P.H <= n ** (n * 2 ** n)
            assert P.D <= comb(n, M.r)
            if form == SINGLE_DUMMY:
                assert P.t <= n * n + 1


def _det(F, rows):
    # Laplace expansion on codes, written independently of the library
    if len(rows) == 1:
        return rows[0][0]
    acc = 0
    for j in range(len(rows)):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = F.mul(rows[0][j], _det(F, minor))
        acc = F.add(acc, term) if j % 2 == 0 else F.sub(acc, term)
    return acc


def _represents(M, F, mat):
    for X in combinations(range(1, M.n + 1), M.r):
        sub = [[row[j - 1] for j in X] for row in mat]
        if (_det(F, sub) != 0) != M.is_basis(X):
            return False
    return True


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("q", [(2, 1), (3, 1), (2, 2)])
def test_solutions_are_exactly_representations(spec, q):
    M = catalog(spec)
    F = make_field(*q)
    S = system_from_matroid(M, SINGLE_DUMMY)
    r, n = M.r, M.n
    from_system = {pt[: r * n] for pt in iter_points(S.polys, S.t, F)}
    direct = set()
    for flat in product(range(F.q), repeat=r * n):
        mat = [list(flat[i * n:(i + 1) * n]) for i in range(r)]
        if _represents(M, F, mat):
            direct.add(flat)
    assert from_system == direct


@pytest.mark.parametrize("spec", ["uniform:2:4", "fano", "nonfano", "uniform:2:5", "with_loops:fano:1"])
@pytest.mark.parametrize("q", [(2, 1), (3, 1), (2, 2)])
def test_formulations_agree(spec, q):
    M = catalog(spec)
    F = make_field(*q)
    single = solve_in_field(system_from_matroid(M, SINGLE_DUMMY, True), F)
    per_basis = solve_in_field(system_from_matroid(M, PER_BASIS, True), F)
    assert (single is None) == (per_basis is None)


@pytest.mark.parametrize("q", [(2, 1), (3, 1)])
def test_normalization_preserves_solvability_small(q):
    F = make_field(*q)
    for spec in ["uniform:2:3", "uniform:2:4", "with_loops:uniform:2:3:1"]:
        M = catalog(spec)
        plain = solve_in_field(system_from_matroid(M), F) is not None
        norm = solve_in_field(system_from_matroid(M, normalize=True), F) is not None
        assert plain == norm


def test_matrix_point_lifts_representation():
    F = make_field(2)
    M = catalog("fano")
    mat = [[(j >> (2 - i)) & 1 for j in range(1, 8)] for i in range(3)]
    S = system_from_matroid(M, PER_BASIS)
    pt = matrix_point(S, mat, F)
    for eq in S.expanded():
        assert F.eval_poly_codes(eq, pt) == 0


def test_reduce_examples():
    F5, F3, F2 = make_field(5), make_field(3), make_field(2)
    S = [parse_polynomial("x1*x2 - x2", 2), parse_polynomial("x1 - 2", 2)]
    R = reduce_system(S, F5, 1)
    assert R.polys == S
    S = [parse_polynomial("x2^2 - x1", 2), parse_polynomial("x1 - 1", 2)]
    assert reduce_system(S, F3, 1).polys == S
    with pytest.raises(AllZerosSolution):
        reduce_system([parse_polynomial("x1*x2", 2)], F2)
    with pytest.raises(AllZerosSolution):
        reduce_system([parse_polynomial("x2^2 - x1", 2), parse_polynomial("x1", 2)], F3)
    with pytest.raises(InconsistentInput):
        reduce_system([parse_polynomial("x1 - 1", 2), Polynomial.constant(2, 3)], F2)
    with pytest.raises(CapExceeded):
        reduce_system([parse_polynomial("x1^2 + 1", 1)], F3, 1)


def test_reduce_splits_vanishing_leading_coefficient():
    F3 = make_field(3)
    # x1 - 1 = 0 forces a_d = x1 - 1 to vanish, so x2*(x1 - 1) + x1 - 1 splits
    S = [parse_polynomial("x1*x2 - x2 + x1 - 1", 2), parse_polynomial("x1 - 1", 2)]
    R = reduce_system(S, F3, 1)
    assert all(f.degree(1) == 0 for f in R.polys)


def _poly2(d):
    return Polynomial(2, d)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-2, 2), max_size=3),
                min_size=1, max_size=3))
def test_reduce_variety_contained(terms):
    F = make_field(3)
    polys = [_poly2(d) for d in terms]
    try:
        R = reduce_system(polys, F, 1)
    except (AllZerosSolution, InconsistentInput, CapExceeded):
        return
    before = set(iter_points(polys, 2, F))
    after = set(iter_points(R.polys, 2, F))
    assert after <= before
    assert after  # the sampled variety never becomes empty


def test_gen_system_uses_expanded_text_when_small():
    S = system_from_matroid(catalog("uniform:1:2"))
    assert S.to_json()["polys"] == ["x1*x2*x3 - 1"]


def test_from_polys():
    S = PolySystem.from_polys([parse_polynomial("x1 - 1", 2)])
    assert S.t == 2 and S.roles == [("variable", 1), ("variable", 2)]
