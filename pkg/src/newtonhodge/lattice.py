"""Exact geometry of Newton polytopes.

A Newton polytope here is the convex hull of the origin together with the
exponent vectors of a Laurent polynomial.  Facets come in two kinds: those
through the origin (they cut out the cone) and those not through the origin,
written as ``<a, x> = 1``; the weight function is the maximum of the latter
functionals on the cone.

Everything is exact: coordinates are ``int`` and facet normals ``Fraction``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import gcd, inf, lcm

from ._linalg import affine_rank, det_int, nullspace, rank
from .errors import DegeneratePolytope, DimensionTooLarge

MAX_DIM = 6

INFINITE = inf


@dataclass(frozen=True)
class Facet:
    normal: tuple  # tuple[Fraction, ...]
    through_origin: bool
    vertices: frozenset

    def value(self, u):
        return sum(a * x for a, x in zip(self.normal, u))

    @property
    def denominator(self):
        return reduce(lcm, (Fraction(a).denominator for a in self.normal), 1)


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple
    facets: tuple

    @property
    def outer_facets(self):
        """Facets not containing the origin."""
        return tuple(f for f in self.facets if not f.through_origin)

    @property
    def cone_facets(self):
        return tuple(f for f in self.facets if f.through_origin)

    @cached_property
    def denominator(self):
        return denominator(self)

    @cached_property
    def integer_functionals(self):
        """(outer, cone) integer normals: D * outer normals and primitive cone normals."""
        d = self.denominator
        outer = [tuple(int(a * d) for a in f.normal) for f in self.outer_facets]
        cone = [tuple(int(a) for a in f.normal) for f in self.cone_facets]
        return outer, cone

    def faces(self):
        """All closed faces as vertex frozensets, keyed to their dimension."""
        out = {}
        frontier = {f.vertices: self.dim - 1 for f in self.facets}
        while frontier:
            out.update(frontier)
            nxt = {}
            for face, d in frontier.items():
                if d == 0:
                    continue
                for sub in _subfaces(face, d, self.facets):
                    if sub not in out:
                        nxt[sub] = d - 1
            frontier = nxt
        return out

    def facets_containing(self, face):
        return [f for f in self.facets if face <= f.vertices]

    def on_face(self, face, u):
        """True iff lattice point ``u`` of the polytope lies on the closed face."""
        for f in self.facets_containing(face):
            target = 0 if f.through_origin else 1
            if f.value(u) != target:
                return False
        return True


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = reduce(lcm, (Fraction(x).denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints)


def hull_facets(support, n=None):
    """Facets and vertices of conv({0} U support) by testing every n-subset.

    Raises DimensionTooLarge for n > 6 and DegeneratePolytope when the hull is
    not full-dimensional.
    """
    pts = sorted({tuple(int(c) for c in v) for v in support})
    if n is None:
        n = len(pts[0])
    if n > MAX_DIM:
        raise DimensionTooLarge(f"brute-force hull supports n <= {MAX_DIM}, got {n}")
    if any(len(v) != n for v in pts):
        raise ValueError("support points must all have length n")
    origin = (0,) * n
    if origin not in pts:
        pts = sorted(pts + [origin])
    if rank([list(v) for v in pts]) < n:
        raise DegeneratePolytope("support together with the origin does not span R^n")

    found = {}
    for subset in combinations(pts, n):
        ns = nullspace([list(v) + [-1] for v in subset], n + 1)
        if len(ns) != 1:
            continue
        *a, b = ns[0]
        vals = [sum(ai * x for ai, x in zip(a, v)) - b for v in pts]
        if all(s <= 0 for s in vals):
            pass
        elif all(s >= 0 for s in vals):
            a, b = [-x for x in a], -b
        else:
            continue
        if b == 0:
            # cone facet: orient inward (<a, v> >= 0), primitive integer normal
            prim = _primitive([-x for x in a])
            normal = tuple(Fraction(x) for x in prim)
            through = True
        else:
            normal = tuple(x / b for x in a)
            through = False
        key = (through, normal)
        if key in found:
            continue
        found[key] = (normal, through)

    facets_raw = []
    for normal, through in found.values():
        target = 0 if through else 1
        on = [v for v in pts if sum(a * x for a, x in zip(normal, v)) == target]
        facets_raw.append((normal, through, on))

    vertices = []
    for v in pts:
        normals = [list(nm) for nm, _, on in facets_raw if v in on]
        if normals and rank(normals) == n:
            vertices.append(v)
    vset = set(vertices)
    facets = [
        Facet(normal, through, frozenset(w for w in on if w in vset))
        for normal, through, on in facets_raw
    ]
    facets.sort(key=lambda f: f.normal)
    return Polytope(n, tuple(sorted(vertices)), tuple(facets))


def weight(poly, u):
    """Smallest c >= 0 with u in c*poly, as a Fraction; INFINITE off the cone."""
    for f in poly.cone_facets:
        if f.value(u) < 0:
            return INFINITE
    return max([Fraction(0)] + [f.value(u) for f in poly.outer_facets])


def cone_contains(poly, u):
    return weight(poly, u) != INFINITE


def denominator(poly):
    """LCM of the facet denominators over facets not through the origin."""
    return reduce(lcm, (f.denominator for f in poly.outer_facets), 1)


def _subfaces(face, dim, facets):
    subs = set()
    for g in facets:
        inter = face & g.vertices
        if inter and inter != face and affine_rank(inter) == dim - 1:
            subs.add(frozenset(inter))
    return subs


def _pulling_triangulation(face, dim, facets):
    if dim == 0:
        return [[next(iter(face))]]
    apex = min(face)
    simplices = []
    for sub in sorted(_subfaces(face, dim, facets), key=sorted):
        if apex in sub:
            continue
        for s in _pulling_triangulation(sub, dim - 1, facets):
            simplices.append([apex] + s)
    return simplices


def normalized_volume(poly):
    """n! times the Euclidean volume, by coning the outer facets to the origin."""
    if not poly.outer_facets:
        raise DegeneratePolytope("polytope has no facet avoiding the origin")
    total = 0
    for f in poly.outer_facets:
        for simplex in _pulling_triangulation(f.vertices, poly.dim - 1, poly.facets):
            total += abs(det_int(simplex))
    if total == 0:
        raise DegeneratePolytope("zero volume")
    return total
