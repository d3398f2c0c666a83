import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonhodge.errors import BudgetExceeded, NotPrime, ZeroCoordinate
from newtonhodge.gf import FieldCtx, evaluate, field_create, irreducible_modulus, is_irreducible, trace
from newtonhodge.laurent import LaurentPolynomial

SMALL = [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 1), (7, 2)]


def sympy_irreducible(coeffs, p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return poly.is_irreducible


def test_modulus_choice():
    assert field_create(3, 2).modulus == (1, 0, 1)
    assert field_create(2, 2).modulus == (1, 1, 1)
    assert field_create(2, 1).q == 2


@pytest.mark.parametrize("p,d", [(2, 3), (2, 5), (3, 3), (5, 2), (3, 4)])
def test_modulus_is_first_irreducible(p, d):
    f = irreducible_modulus(p, d)
    assert sympy_irreducible(list(f), p)
    code = sum(c * p ** i for i, c in enumerate(f[:-1]))
    for smaller in range(code):
        low = [(smaller // p ** i) % p for i in range(d)]
        assert not sympy_irreducible(low + [1], p)


def test_irreducibility_against_sympy():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        d = rng.randint(1, 6)
        f = [rng.randrange(p) for _ in range(d)] + [1]
        assert is_irreducible(f, p) == sympy_irreducible(f, p)


def test_trace_examples():
    assert trace(FieldCtx(2, 1), 1) == 1
    f9 = FieldCtx(3, 2)
    assert f9.trace(3) == 0  # the class of x


@pytest.mark.parametrize("p,d", SMALL)
def test_trace_definitions_agree(p, d):
    F = FieldCtx(p, d)
    T = F.trace_powers()
    for e in range(F.order):
        x = int(F.antilog_table[e])
        assert F.trace(x) == F.trace_frobenius(x) == T[e]
        assert F.trace(F.pow(x, p)) == F.trace(x)
    counts = [0] * p
    for x in F.elements():
        counts[F.trace(x)] += 1
    assert counts == [p ** (d - 1)] * p


@pytest.mark.parametrize("p,d", SMALL)
def test_tables_and_polynomial_arithmetic_agree(p, d):
    F = FieldCtx(p, d)
    G = FieldCtx(p, d, table_budget=0)
    assert G.log_table is None
    assert all(F.antilog_table[F.log_table[x]] == x for x in F.units())
    assert (F.trace_powers() == G.trace_powers()).all()
    rng = random.Random(p * 100 + d)
    for _ in range(100):
        x, y = rng.randrange(F.q), rng.randrange(F.q)
        assert F.mul(x, y) == G.mul(x, y)
        if x:
            assert F.mul(x, F.inv(x)) == 1
            assert G.log(x) == F.log(x)


def test_large_field_has_tables():
    F = FieldCtx(2, 15)
    assert F.q == 32768 and F.log_table is not None


def test_errors():
    with pytest.raises(NotPrime):
        FieldCtx(4, 1)
    with pytest.raises(BudgetExceeded):
        FieldCtx(2, 30)


@settings(max_examples=50)
@given(st.integers(0, 80), st.integers(0, 80))
def test_trace_additive(x, y):
    F = FieldCtx(3, 4)
    assert F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % 3


def test_evaluate_examples():
    f = LaurentPolynomial.from_terms(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)], 3)
    assert evaluate(FieldCtx(3, 1), f, (1, 1)) == 0
    g = LaurentPolynomial.from_terms(1, [((2,), 1)], 5)
    assert evaluate(FieldCtx(5, 1), g, (2,)) == 4
    h = LaurentPolynomial.from_terms(2, [((3, 0), 1), ((0, 3), 1), ((-1, -1), 1)], 2)
    F4 = FieldCtx(2, 2)
    omega = 2
    assert evaluate(F4, h, (omega, omega)) == omega
    with pytest.raises(ZeroCoordinate):
        evaluate(F4, h, (0, 1))


@pytest.mark.parametrize("p,a,d", [(2, 2, 4), (3, 2, 4), (2, 3, 6), (5, 2, 2)])
def test_subfield_embedding_is_a_homomorphism(p, a, d):
    small, big = FieldCtx(p, a), FieldCtx(p, d)
    for x in range(small.q):
        for y in range(small.q):
            ex, ey = big.embed(small.digits(x), a), big.embed(small.digits(y), a)
            assert big.embed(small.digits(small.mul(x, y)), a) == big.mul(ex, ey)
            assert big.embed(small.digits(small.add(x, y)), a) == big.add(ex, ey)
