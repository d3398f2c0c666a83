from fractions import Fraction
from math import inf

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newtonhodge.errors import EmptyInput, EndpointMismatch
from newtonhodge.polygon import RationalPolygon, Verdict, compare_polygons, lower_hull


def F(a, b=1):
    return Fraction(a, b)


def test_lower_hull_examples():
    assert [s for s, _ in lower_hull([(0, 0), (1, 0), (2, 1), (3, 3)]).slopes] == [0, 1, 2]
    assert lower_hull([(0, 0), (1, 5), (2, 0)]).vertices == ((0, 0), (2, 0))
    hull = lower_hull([(0, 0), (1, inf), (2, 1)])
    assert hull.slopes == ((F(1, 2), 2),)


def test_lower_hull_errors():
    with pytest.raises(EmptyInput):
        lower_hull([(0, inf)])
    with pytest.raises(ValueError):
        lower_hull([(1, 0), (2, 1)])


def test_from_slopes_merges():
    poly = RationalPolygon.from_slopes([(F(1, 2), 1), (0, 1), (F(1, 2), 1), (3, 0)])
    assert poly.slopes == ((0, 1), (F(1, 2), 2))
    assert poly.endpoint == (3, 1)
    assert poly.slope_multiset() == [0, F(1, 2), F(1, 2)]


def test_compare():
    hp = RationalPolygon.from_slopes([(0, 1), (F(1, 3), 1), (F(2, 3), 1)])
    np_ = RationalPolygon.from_slopes([(0, 1), (F(1, 2), 2)])
    assert compare_polygons(np_, hp) == Verdict.STRICTLY_ABOVE
    assert compare_polygons(hp, hp) == Verdict.EQUAL
    assert compare_polygons(hp, np_) == Verdict.CROSSING
    with pytest.raises(EndpointMismatch):
        compare_polygons(hp, RationalPolygon.from_slopes([(0, 3)]))


@given(st.lists(st.one_of(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                          st.just(inf)), min_size=1, max_size=10))
def test_hull_is_lower_convex_and_below_points(values):
    pts = [(0, 0)] + [(i + 1, v) for i, v in enumerate(values)]
    hull = lower_hull(pts)
    assert hull.is_lower_convex()
    for i, v in pts:
        if v != inf and i <= hull.width:
            assert hull.value_at(i) <= v
    for x, y in hull.vertices:
        assert (x, y) in [(F(i), F(v)) for i, v in pts if v != inf]
