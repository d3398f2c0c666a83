"""Diagonal, reflection (G) and Kloosterman (K) families and their predicates."""

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from math import lcm

import numpy as np

from .errors import BudgetExceeded, DegeneratePrime, InvalidSpec
from .laurent import LaurentPolynomial

KINDS = {"D": "Diagonal", "G": "Reflection", "K": "Kloosterman"}


@dataclass(frozen=True)
class FamilySpec:
    """kind is "D" (diagonal), "G" (reflection) or "K" (Kloosterman).

    ``coefficients`` optionally lists one F_q coefficient per support point in
    the order produced by :func:`support_of`; the default is all ones.
    """

    kind: str
    n: int
    m: tuple
    j: int = 0
    coefficients: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.coefficients is not None:
            object.__setattr__(self, "coefficients", tuple(self.coefficients))
        validate(self)

    @classmethod
    def from_json(cls, data):
        kind = str(data["kind"]).upper()[:1]
        coeffs = data.get("coeffs")
        return cls(kind, int(data["n"]), tuple(data["m"]), int(data.get("j", 0)),
                   tuple(coeffs) if coeffs else None)

    def label(self):
        ms = ",".join(map(str, self.m))
        return f"{self.kind}^{self.j}_{self.n},({ms})"


def validate(spec):
    if spec.kind not in KINDS:
        raise InvalidSpec(f"unknown family kind {spec.kind!r}")
    if spec.n < 1 or len(spec.m) != spec.n:
        raise InvalidSpec("need n >= 1 and len(m) == n")
    if any(x < 1 for x in spec.m):
        raise InvalidSpec("exponents m_i must be positive")
    if spec.kind == "D" and spec.j != 0:
        raise InvalidSpec("diagonal specs have j = 0")
    if spec.kind == "G" and not 0 <= spec.j <= spec.n:
        raise InvalidSpec("reflection specs need 0 <= j <= n")
    if spec.kind == "K" and not 1 <= spec.j <= spec.n:
        raise InvalidSpec("Kloosterman specs need 1 <= j <= n")


def _unit(n, i, c):
    return tuple(c if t == i else 0 for t in range(n))


def support_of(spec):
    n, m, j = spec.n, spec.m, spec.j
    pts = [_unit(n, i, m[i]) for i in range(n)]
    if spec.kind == "G":
        pts += [_unit(n, i, -m[i]) for i in range(j)]
    elif spec.kind == "K":
        pts.append(tuple(-1 if i < j else 0 for i in range(n)))
    return pts


def build(spec, p=0, a=1):
    """The family member as a Laurent polynomial over F_{p^a}."""
    pts = support_of(spec)
    coeffs = spec.coefficients or (1,) * len(pts)
    if len(coeffs) != len(pts):
        raise InvalidSpec(f"expected {len(pts)} coefficients, got {len(coeffs)}")
    f = LaurentPolynomial.from_terms(spec.n, list(zip(pts, coeffs)), p, a)
    if len(f.terms) != len(pts):
        raise InvalidSpec("a coefficient vanishes mod p; support would change")
    return f


def dstar(spec):
    return reduce(lcm, spec.m, 1)


def nondegenerate_criterion(spec, p):
    return dstar(spec) % p != 0


class Expected(str, Enum):
    NP_EQUALS_HP = "NPequalsHP"
    NP_STRICTLY_ABOVE = "NPstrictlyAbove"


def ordinarity_expectation(spec, p):
    """Whether NP = HP is predicted, i.e. p = 1 mod D*."""
    if not nondegenerate_criterion(spec, p):
        raise DegeneratePrime(f"p = {p} divides D* = {dstar(spec)}")
    if (p - 1) % dstar(spec) == 0:
        return Expected.NP_EQUALS_HP
    return Expected.NP_STRICTLY_ABOVE


# -- non-degeneracy falsifier ---------------------------------------------------

DEFAULT_SEARCH_BUDGET = 10**8


@dataclass(frozen=True)
class Witness:
    """A torus point over F_{p^(a r)} where every x_i d/dx_i of f restricted to ``face`` vanishes."""

    r: int
    face: tuple  # sorted vertices of the face
    point: tuple  # field elements as ints, in the FieldCtx(p, a*r) encoding


class NoneFound:
    """No witness within the search range.  This does not prove non-degeneracy."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoneFound"

    def __eq__(self, other):
        return isinstance(other, NoneFound)

    def __hash__(self):
        return hash("NoneFound")


def faces_avoiding_origin(poly):
    """Closed faces not containing the origin, ordered by (dimension, vertices)."""
    origin = (0,) * poly.dim
    faces = [(d, tuple(sorted(face))) for face, d in poly.faces().items()
             if not poly.on_face(face, origin)]
    return [face for _, face in sorted(faces)]


def _face_witness(f, face_terms, ctx, threads):
    """Smallest torus point (by element tuple) where all x_i d_i f^face vanish."""
    n, p, Q = f.n, ctx.p, ctx.order
    digits = ctx.power_digits()  # (Q, d)
    logs = [(exp, ctx.log(ctx.embed(c, f.a))) for exp, c in face_terms]
    exps = np.array([e for e, _ in logs], dtype=np.int64).reshape(-1, n)
    lcs = np.array([lc for _, lc in logs], dtype=np.int64)
    grids = np.meshgrid(*[np.arange(Q, dtype=np.int64)] * n, indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    vals = digits[(pts @ exps.T + lcs[None, :]) % Q]  # (points, terms, d)
    ok = np.ones(len(pts), dtype=bool)
    for i in range(n):
        weights = exps[:, i] % p
        s = (vals * weights[None, :, None]).sum(axis=1) % p
        ok &= ~s.any(axis=1)
    if not ok.any():
        return None
    anti = digits @ np.array([p ** i for i in range(ctx.d)], dtype=np.int64)
    hits = anti[pts[ok]]
    return min(tuple(int(x) for x in row) for row in hits)


def nondegeneracy_falsifier(f, r_max=2, threads=1, budget=DEFAULT_SEARCH_BUDGET,
                            modulus_rank=0):
    """Search for a degenerate face: a common torus zero of x_i d/dx_i f^face.

    Every closed face of the Newton polytope avoiding the origin is tried over
    F_{p^(a r)} for r = 1..r_max.  Returns the first Witness in order
    (r, face, point), or NoneFound.  Only ever refutes non-degeneracy.
    """
    from .gf import FieldCtx
    from .lattice import hull_facets

    poly = hull_facets(f.support, f.n)
    faces = faces_avoiding_origin(poly)
    cost = sum((f.p ** (f.a * r) - 1) ** f.n * len(faces) for r in range(1, r_max + 1))
    if cost > budget:
        raise BudgetExceeded(f"search needs {cost} point checks, budget {budget}", required=cost)
    for r in range(1, r_max + 1):
        ctx = FieldCtx(f.p, f.a * r, modulus_rank=modulus_rank)
        for face in faces:
            fs = frozenset(face)
            terms = [(e, c) for e, c in f.terms if poly.on_face(fs, e)]
            point = _face_witness(f, terms, ctx, threads)
            if point is not None:
                return Witness(r, face, point)
    return NoneFound()


# -- closed-form weight numbers --------------------------------------------------

def closed_form_weights(spec, k_max=None, corrected=False):
    """Weight numbers from the family closed forms, for 0 <= k <= k_max (default nD).

    Raises UnsupportedParameters when no closed form covers the spec and
    OutsideValidityDomain when the applicable one is outside its domain.
    With ``corrected=True`` two-variable Kloosterman specs with coprime
    exponents use the rule that holds for every coprime pair instead.
    """
    from math import gcd

    from . import hodge
    from .errors import UnsupportedParameters
    from .lattice import hull_facets

    D = hull_facets(support_of(spec), spec.n).denominator
    n, m, j = spec.n, spec.m, spec.j
    if k_max is None:
        k_max = n * D
    equal = len(set(m)) == 1
    if spec.kind in "DG":
        def w(k):
            return hodge.reflection_W(n, m, j, k)
    elif equal:
        def w(k):
            return hodge.kloosterman_equilateral_W(n, m[0], j, k)
    elif n == 2 and corrected and gcd(*m) == 1:
        def w(k):
            return hodge.kloosterman_2d_W_general(m[0], m[1], j, k)
    elif n == 2:
        hodge.kloosterman_2d_W(m[0], m[1], j, 0)  # domain check

        def w(k):
            return hodge.kloosterman_2d_W(m[0], m[1], j, k)
    else:
        raise UnsupportedParameters(f"no closed form for {spec.label()}")
    return hodge.WeightVector(D, tuple(w(k) for k in range(k_max + 1)))
