"""Lower-convex rational polygons, the common currency of Hodge and Newton data."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import inf

from .errors import EmptyInput, EndpointMismatch


@dataclass(frozen=True)
class RationalPolygon:
    """Vertices from (0, 0) plus the (slope, horizontal length) segments."""

    vertices: tuple
    slopes: tuple

    @classmethod
    def from_slopes(cls, segments):
        """Build from (slope, length) pairs; merges equal slopes, drops length 0."""
        merged = {}
        for slope, length in segments:
            if length < 0:
                raise ValueError("negative segment length")
            if length:
                slope = Fraction(slope)
                merged[slope] = merged.get(slope, 0) + int(length)
        slopes = tuple(sorted(merged.items()))
        x, y = Fraction(0), Fraction(0)
        vertices = [(x, y)]
        for s, length in slopes:
            x += length
            y += s * length
            vertices.append((x, y))
        return cls(tuple(vertices), slopes)

    @classmethod
    def from_vertices(cls, vertices):
        vs = [(Fraction(x), Fraction(y)) for x, y in vertices]
        segs = []
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            dx = x1 - x0
            if dx <= 0 or dx.denominator != 1:
                raise ValueError("vertex x-coordinates must increase by integers")
            segs.append(((y1 - y0) / dx, int(dx)))
        poly = cls.from_slopes(segs)
        if poly.vertices[0] != vs[0]:
            raise ValueError("polygon must start at the origin")
        return poly

    @property
    def endpoint(self):
        return self.vertices[-1]

    @property
    def width(self):
        return int(self.vertices[-1][0])

    def slope_multiset(self):
        """Sorted list with each slope repeated by its horizontal length."""
        return [s for s, length in self.slopes for _ in range(length)]

    def value_at(self, x):
        x = Fraction(x)
        vs = self.vertices
        if x < 0 or x > vs[-1][0]:
            raise ValueError("x outside polygon range")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return vs[0][1]

    def is_lower_convex(self):
        return all(a[0] < b[0] for a, b in zip(self.slopes, self.slopes[1:]))


def lower_hull(points):
    """Lower convex hull of (i, value) points; infinite values are skipped."""
    pts = sorted((int(i), Fraction(v)) for i, v in points if v != inf)
    if not pts:
        raise EmptyInput("no finite points")
    if pts[0] != (0, 0):
        raise ValueError("lower hull needs the point (0, 0)")
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        if hull and hull[-1][0] == p[0]:
            continue
        hull.append(p)
    return RationalPolygon.from_vertices(hull)


class Verdict(str, Enum):
    EQUAL = "Equal"
    STRICTLY_ABOVE = "StrictlyAboveSomewhere"
    CROSSING = "Crossing"


def compare_polygons(newton, hodge):
    """Compare NP against HP at every vertex abscissa of either polygon.

    Raises EndpointMismatch when the polygons do not end at the same point.
    """
    if newton.endpoint != hodge.endpoint:
        raise EndpointMismatch(f"endpoints differ: NP {newton.endpoint} vs HP {hodge.endpoint}")
    xs = sorted({x for x, _ in newton.vertices} | {x for x, _ in hodge.vertices})
    diffs = [newton.value_at(x) - hodge.value_at(x) for x in xs]
    if any(d < 0 for d in diffs):
        return Verdict.CROSSING
    if any(d > 0 for d in diffs):
        return Verdict.STRICTLY_ABOVE
    return Verdict.EQUAL
