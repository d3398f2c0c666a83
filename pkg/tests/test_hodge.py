from fractions import Fraction
from itertools import product
from math import floor, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonhodge.errors import (
    BoxOverflow,
    DegeneratePolytope,
    InsufficientRange,
    NotCoprime,
    OutOfRange,
    OutsideValidityDomain,
    UnsupportedParameters,
)
from newtonhodge.families import FamilySpec, closed_form_weights, support_of
from newtonhodge.hodge import (
    WeightVector,
    diag_equilateral_H,
    diag_equilateral_hp_vertices,
    diag_equilateral_W,
    hodge_numbers,
    hodge_polygon,
    kloosterman_2d_extra,
    kloosterman_2d_W,
    kloosterman_2d_W_general,
    kloosterman_equilateral_W,
    popoviciu_W,
    reflection_W,
    weight_numbers,
)
from newtonhodge.lattice import INFINITE, hull_facets, normalized_volume, weight


def W_of(kind, n, m, j, k_max=None):
    return weight_numbers(hull_facets(support_of(FamilySpec(kind, n, m, j)), n), k_max)


def H_of(kind, n, m, j):
    return hodge_numbers(W_of(kind, n, m, j), n)


# -- enumerator ----------------------------------------------------------------

def brute_weights(poly, k_max, radius):
    D = poly.denominator
    counts = [0] * (k_max + 1)
    for u in product(range(-radius, radius + 1), repeat=poly.dim):
        w = weight(poly, u)
        if w != INFINITE and w * D <= k_max:
            counts[int(w * D)] += 1
    return counts


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=5))
def test_enumerator_matches_pointwise_weights(points):
    try:
        poly = hull_facets(points, 2)
    except DegeneratePolytope:
        return
    if not poly.outer_facets:
        return
    k_max = 2 * poly.denominator
    # every point of weight <= 2 has coordinates bounded by 2 * 3
    assert list(weight_numbers(poly, k_max).counts) == brute_weights(poly, k_max, 6)


def test_enumerator_examples():
    for m in range(1, 6):
        W = W_of("G", 2, (m, m), 0)
        assert [W[k] for k in range(2 * m + 1)] == [k + 1 for k in range(2 * m + 1)]
        assert W_of("K", 2, (m, m), 2)[m] == m + 2
        W2 = W_of("G", 2, (m, m), 2)
        assert W2[0] == 1 and all(W2[k] == 4 * k for k in range(1, 2 * m + 1))


def test_box_overflow():
    poly = hull_facets(support_of(FamilySpec("G", 3, (4, 4, 4), 3)), 3)
    with pytest.raises(BoxOverflow):
        weight_numbers(poly, budget=1000)


# -- Hodge numbers and polygon ------------------------------------------------------

def test_hodge_examples():
    assert H_of("D", 2, (2, 3), 0)[6] == 0
    for m in range(2, 6):
        assert H_of("G", 2, (m, m), 0)[m] == m - 1
    H = H_of("G", 2, (2, 2), 0)
    assert H.numbers == (1, 2, 1, 0, 0)
    assert hodge_polygon(H).vertices == ((0, 0), (1, 0), (3, 1), (4, 2))
    assert hodge_polygon(H_of("K", 2, (1, 1), 2)).slopes == ((0, 1), (1, 1), (2, 1))
    assert hodge_polygon(H_of("G", 2, (1, 1), 1)).slopes == ((0, 1), (1, 1))


def test_hodge_errors():
    with pytest.raises(InsufficientRange):
        hodge_numbers(WeightVector(2, (1, 2, 3)), 2)
    with pytest.raises(ValueError):
        hodge_numbers(WeightVector(1, (1, 1, 1, 5)), 1)


@pytest.mark.parametrize("kind,n,js", [("D", 2, [0]), ("G", 2, [0, 1, 2]), ("K", 2, [1, 2]),
                                       ("G", 3, [0, 1, 2, 3]), ("K", 3, [1, 2, 3])])
def test_polygon_endpoint_and_convexity(kind, n, js):
    for m in product(range(1, 4), repeat=n):
        for j in js:
            spec = FamilySpec(kind, n, m, j)
            poly = hull_facets(support_of(spec), n)
            H = hodge_numbers(weight_numbers(poly), n)
            hp = hodge_polygon(H)
            assert all(h >= 0 for h in H.numbers)
            assert hp.is_lower_convex()
            height = sum(Fraction(k * h, H.D) for k, h in enumerate(H.numbers))
            assert hp.endpoint == (normalized_volume(poly), height)


# -- diagonal closed forms -----------------------------------------------------------

def test_diag_equilateral_examples():
    assert diag_equilateral_W(2, 5, 3) == 4
    assert diag_equilateral_H(2, 4, 4) == 3
    assert diag_equilateral_W(0, 3, 0) == 1 and diag_equilateral_W(0, 3, 2) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diag_equilateral_matches_enumerator(n):
    for m in range(1, 7 if n < 3 else 5):
        W = W_of("D", n, (m,) * n, 0)
        H = hodge_numbers(W, n)
        for k in range(n * m + 1):
            assert diag_equilateral_W(n, m, k) == W[k]
            assert diag_equilateral_H(n, m, k) == H[k]


def test_hp_vertex_closed_form():
    for n in (1, 2, 3):
        for m in range(1, 6):
            H = hodge_numbers(W_of("D", n, (m,) * n, 0), n)
            assert [tuple(v) for v in diag_equilateral_hp_vertices(n, m)] == list(hodge_polygon(H).vertices)


def test_popoviciu_examples():
    assert popoviciu_W(3, 5, 0) == 1
    assert popoviciu_W(3, 5, 1) == 0
    assert popoviciu_W(3, 5, 15) == 2
    with pytest.raises(NotCoprime):
        popoviciu_W(2, 4, 3)


def test_popoviciu_sign_convention():
    # with {x} read as floor(x) - x the count would not even be an integer
    k, m1, m2 = 1, 3, 5

    def bad_frac(x):
        return floor(x) - x

    w = (Fraction(k, m1 * m2) - bad_frac(Fraction(pow(m2, -1, m1) * k, m1))
         - bad_frac(Fraction(pow(m1, -1, m2) * k, m2)) + 1)
    assert w == Fraction(32, 15)


def test_popoviciu_brute_force():
    for m1 in range(1, 8):
        for m2 in range(1, 8):
            if gcd(m1, m2) != 1:
                continue
            for k in range(3 * m1 * m2):
                brute = sum(1 for x1 in range(k + 1) for x2 in range(k + 1) if m2 * x1 + m1 * x2 == k)
                assert popoviciu_W(m1, m2, k) == brute


# -- reflection ------------------------------------------------------------------------

def test_reflection_equilateral_examples():
    for m in range(1, 6):
        assert [reflection_W(2, (m, m), 1, k) for k in range(2 * m + 1)] == [2 * k + 1 for k in range(2 * m + 1)]


def test_reflection_recursion_matches_enumerator():
    for n in (1, 2, 3):
        for m in product(range(1, 5), repeat=n):
            for j in range(n + 1):
                W = W_of("G", n, m, j)
                for k in range(n * W.D + 1):
                    assert reflection_W(n, m, j, k, allow_enumeration=True) == W[k]


def test_reflection_base_case_unavailable():
    with pytest.raises(UnsupportedParameters):
        reflection_W(2, (2, 4), 1, 3)


def test_reflection_recursion_on_raw_enumerator_output():
    # W^j(k) = 2 W^{j-1}(k) - W_slice(k') directly on enumerated weights
    for m1, m2 in [(2, 3), (3, 4), (2, 2), (1, 3)]:
        W0, W1, W2 = (W_of("G", 2, (m1, m2), j) for j in range(3))
        D = W0.D
        s1, s2 = W_of("G", 1, (m2,), 0), W_of("G", 1, (m1,), 1)
        for k in range(2 * D + 1):
            k1 = Fraction(k * s1.D, D)
            k2 = Fraction(k * s2.D, D)
            assert W1[k] == 2 * W0[k] - (s1[int(k1)] if k1.denominator == 1 else 0)
            assert W2[k] == 2 * W1[k] - (s2[int(k2)] if k2.denominator == 1 else 0)


def test_coprime_reflection_shortcuts():
    # the shortcuts W^1 = 2W^0 - 1 and W^2 = 4W^0 - 4 hold only when m1 | k;
    # in general the subtracted terms are indicator functions
    for m1, m2 in [(2, 3), (2, 5), (3, 5), (3, 4)]:
        D = m1 * m2
        for k in range(1, 2 * D + 1):
            w0 = popoviciu_W(m1, m2, k)
            w1 = reflection_W(2, (m1, m2), 1, k)
            w2 = reflection_W(2, (m1, m2), 2, k)
            assert w1 == 2 * w0 - (k % m1 == 0)
            assert w2 == 4 * w0 - 2 * (k % m1 == 0) - 2 * (k % m2 == 0)
            if k % m1 == 0 and k % m2 != 0:
                assert w1 == 2 * w0 - 1
            if k % m1:
                assert w1 != 2 * w0 - 1


# -- Kloosterman ---------------------------------------------------------------------

def test_kloosterman_equilateral_examples():
    for m in range(2, 7):
        assert kloosterman_equilateral_W(2, m, 2, m + 1) == m + 4
        g0 = diag_equilateral_W(3, m, 2 * m)
        assert kloosterman_equilateral_W(3, m, 3, 2 * m) - g0 == 3 * m + 1
        assert kloosterman_equilateral_W(3, m, 3, 3 * m) - diag_equilateral_W(3, m, 3 * m) == 9 * m + 1
    with pytest.raises(OutOfRange):
        kloosterman_equilateral_W(2, 3, 2, 7)


def test_kloosterman_equilateral_matches_enumerator():
    for n in (1, 2, 3):
        for m in range(1, 5):
            for j in range(1, n + 1):
                W = W_of("K", n, (m,) * n, j)
                for k in range(n * m + 1):
                    assert kloosterman_equilateral_W(n, m, j, k) == W[k]


def test_kloosterman_2d_examples():
    assert kloosterman_2d_W(2, 3, 2, 6) == 3
    assert kloosterman_2d_W(2, 3, 2, 12) == 6
    assert kloosterman_2d_W(2, 3, 2, 7) == popoviciu_W(2, 3, 7)


def test_kloosterman_2d_domain():
    with pytest.raises(OutsideValidityDomain):
        kloosterman_2d_W(4, 3, 2, 5)
    with pytest.raises(OutsideValidityDomain):
        kloosterman_2d_W(1, 3, 2, 5)
    with pytest.raises(OutsideValidityDomain):
        kloosterman_2d_W(2, 3, 1, 5)


def test_kloosterman_2d_gcd_rule_breaks():
    # composite exponent: k = 14 shares a factor with 12 but gains no point
    W = W_of("K", 2, (4, 3), 2)
    assert kloosterman_2d_W(4, 3, 2, 14, check_domain=False) - popoviciu_W(4, 3, 14) == 1
    assert W[14] - popoviciu_W(4, 3, 14) == 0
    # j = 1 with distinct primes: 9 is a multiple of 3 but not of m1 = 2
    W1 = W_of("K", 2, (2, 3), 1)
    assert kloosterman_2d_W(2, 3, 1, 9, check_domain=False) == 3
    assert W1[9] == 2


def test_kloosterman_2d_valid_on_distinct_primes():
    primes = [2, 3, 5, 7]
    for m1 in primes:
        for m2 in primes:
            if m1 == m2:
                continue
            W = W_of("K", 2, (m1, m2), 2)
            for k in range(2 * m1 * m2 + 1):
                assert kloosterman_2d_W(m1, m2, 2, k) == W[k]


def test_kloosterman_2d_general_rule():
    for m1 in range(1, 9):
        for m2 in range(1, 9):
            if gcd(m1, m2) != 1:
                continue
            for j in (1, 2):
                W = W_of("K", 2, (m1, m2), j)
                for k in range(2 * m1 * m2 + 1):
                    assert kloosterman_2d_W_general(m1, m2, j, k) == W[k]
                    assert kloosterman_2d_extra(m1, m2, j, k) == W[k] - popoviciu_W(m1, m2, k)


def test_closed_form_dispatch():
    spec = FamilySpec("K", 2, (4, 3), 2)
    with pytest.raises(OutsideValidityDomain):
        closed_form_weights(spec)
    W = closed_form_weights(spec, corrected=True)
    assert W.counts == W_of("K", 2, (4, 3), 2, 24).counts
    with pytest.raises(UnsupportedParameters):
        closed_form_weights(FamilySpec("K", 3, (1, 2, 3), 3))
