from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from matrep.errors import DivisionByZero, EmbeddingUnavailable, FieldMismatch, NotPrime, TooLarge
from matrep.gf import (
    arith,
    field_of_order,
    is_prime,
    least_irreducible,
    make_field,
    prime_powers,
    pth_root,
    univariate_roots,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 1)]


def test_moduli():
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 2).to_text() == "GF(2^2)/x^2 + x + 1"


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(TooLarge):
        make_field(2, 21)
    with pytest.raises(NotPrime):
        field_of_order(12)


def test_gf4_generator_squared():
    F = make_field(2, 2)
    g = F.gen()
    assert g * g == g + 1


def test_gf5_division():
    F = make_field(5)
    assert arith(F(2), F(3), "div") == F(4)
    with pytest.raises(DivisionByZero):
        F(2) / F(0)


def test_mismatched_fields():
    with pytest.raises(FieldMismatch):
        make_field(3)(1) + make_field(5)(1)


def test_pth_root_examples():
    F = make_field(2, 2)
    g = F.gen()
    assert pth_root(g, 1) == g + 1
    assert (g + 1) ** 2 == g
    F7 = make_field(7)
    assert all(pth_root(F7(a), 1) == F7(a) for a in range(7))
    assert pth_root(F(0), 1) == F(0)


def test_univariate_root_examples():
    F2, F4, F5 = make_field(2), make_field(2, 2), make_field(5)
    one = F2(1)
    assert univariate_roots([one, one, one], F2) == []
    roots = univariate_roots([one, one, one], F4)
    assert len(roots) == 2 and all(r.code not in (F4.from_int(0), F4.one) for r in roots)
    assert [r.code for r in univariate_roots([F5(-1), F5(0), F5(1)], F5)] == [1, 4]
    with pytest.raises(EmbeddingUnavailable):
        univariate_roots([make_field(2, 2).gen(), one], make_field(2, 3))


def test_prime_powers_order():
    assert prime_powers(20) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
    assert [is_prime(n) for n in range(10)] == [False, False, True, True, False, True, False, True, False, False]


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group(p, k):
    F = make_field(p, k)
    for x in F.elements():
        if x.code:
            assert x ** (F.q - 1) == F(1)


def _polymod_p(a, b, p):
    # remainder of a by monic b, coefficient lists low degree first
    a = list(a)
    while len(a) >= len(b):
        c = a[-1] % p
        if c:
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return [x % p for x in a]


def _monic(p, deg):
    # monic polynomials of degree deg, low-degree-first lexicographic order
    for tail in product(range(p), repeat=deg):
        yield list(tail) + [1]


def _oracle_modulus(p, k):
    if k == 1:
        return (0, 1)
    for f in _monic(p, k):
        if all(any(_polymod_p(f, g, p)) for d in range(1, k // 2 + 1) for g in _monic(p, d)):
            return tuple(f)


@pytest.mark.parametrize("p,k", FIELDS)
def test_modulus_is_least_irreducible(p, k):
    assert make_field(p, k).modulus == _oracle_modulus(p, k)
    assert least_irreducible(p, k) == _oracle_modulus(p, k)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_laws(pk, data):
    F = make_field(*pk)
    a, b, c = (F.element(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F(0)
    if b.code:
        assert (a / b) * b == a
        assert b * b.inverse() == F(1)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_pth_root_inverts_frobenius(pk, data):
    F = make_field(*pk)
    a = F.element(data.draw(st.integers(0, F.q - 1)))
    e = data.draw(st.integers(0, 3))
    assert pth_root(a ** (F.p ** e), e) == a
    assert pth_root(a, e) ** (F.p ** e) == a


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (2, 4)]), st.data())
def test_roots_of_products_of_linear_factors(pk, data):
    F = make_field(*pk)
    cs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=4))
    poly = [F(1)]
    for c in cs:
        # multiply by (x - c)
        neg = -F.element(c)
        poly = [(poly[i - 1] if i else F(0)) + (poly[i] * neg if i < len(poly) else F(0))
                for i in range(len(poly) + 1)]
    roots = univariate_roots(poly, F)
    assert [r.code for r in roots] == sorted(set(cs))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3)), ((2, 2), (2, 2))]), st.data())
def test_embedding_is_a_homomorphism(pair, data):
    small, big = make_field(*pair[0]), make_field(*pair[1])
    a = small.element(data.draw(st.integers(0, small.q - 1)))
    b = small.element(data.draw(st.integers(0, small.q - 1)))
    assert big.embed(a + b) == big.embed(a) + big.embed(b)
    assert big.embed(a * b) == big.embed(a) * big.embed(b)


def test_element_text_round_trip():
    F = make_field(3, 2)
    for x in F.elements():
        assert F.parse_element(x.to_text()) == x
    assert F.gen().to_text() == "[0,1]@GF(3^2)"
