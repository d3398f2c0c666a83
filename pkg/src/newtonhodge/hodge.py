"""Weight numbers, Hodge numbers and Hodge polygons.

``weight_numbers`` is the generic lattice-point enumerator; the remaining
functions are closed forms for the diagonal, reflection and Kloosterman
families, each checked against the enumerator in the test-suite.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, floor, gcd, lcm

import numpy as np

from .errors import (
    BoxOverflow,
    InsufficientRange,
    NotCoprime,
    OutOfRange,
    OutsideValidityDomain,
    UnsupportedParameters,
)
from .polygon import RationalPolygon

DEFAULT_CELL_BUDGET = 10**9
_CHUNK_CELLS = 1 << 21


@dataclass(frozen=True)
class WeightVector:
    D: int
    counts: tuple

    @property
    def k_max(self):
        return len(self.counts) - 1

    def __getitem__(self, k):
        if k < 0:
            return 0
        return self.counts[k]


@dataclass(frozen=True)
class HodgeVector:
    D: int
    n: int
    numbers: tuple

    def __getitem__(self, k):
        if 0 <= k < len(self.numbers):
            return self.numbers[k]
        return 0

    @property
    def total(self):
        return sum(self.numbers)


def binom(a, b):
    """C(a, b), zero unless 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


# -- generic enumerator ------------------------------------------------------

def weight_numbers(poly, k_max=None, budget=DEFAULT_CELL_BUDGET):
    """W(k) = #{u in Z^n : weight(u) = k/D} for 0 <= k <= k_max.

    Scans the bounding box of (k_max/D) * poly; every point of weight at most
    k_max/D lies in it.  Weights are evaluated with the integer functionals
    D * a_F, which give D * weight(u) exactly.
    """
    D = poly.denominator
    n = poly.dim
    if k_max is None:
        k_max = n * D + 2 * D
    outer, cone = poly.integer_functionals
    lo = [floor(Fraction(k_max * min(v[i] for v in poly.vertices + ((0,) * n,)), D))
          for i in range(n)]
    hi = [-floor(Fraction(-k_max * max(v[i] for v in poly.vertices + ((0,) * n,)), D))
          for i in range(n)]
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    cells = 1
    for s in sizes:
        cells *= s
    if cells > budget:
        raise BoxOverflow(f"bounding box has {cells} cells, budget {budget}")

    outer_m = np.array(outer, dtype=np.int64).T  # n x F
    cone_m = np.array(cone, dtype=np.int64).reshape(-1, n).T
    counts = np.zeros(k_max + 1, dtype=np.int64)
    inner = 1
    for s in sizes[1:]:
        inner *= s
    rest = np.stack(np.meshgrid(*[np.arange(l, h + 1) for l, h in zip(lo[1:], hi[1:])],
                                indexing="ij"), axis=-1).reshape(-1, n - 1) if n > 1 else np.zeros((1, 0), dtype=np.int64)
    step = max(1, _CHUNK_CELLS // max(inner, 1))
    for start in range(lo[0], hi[0] + 1, step):
        firsts = np.arange(start, min(start + step, hi[0] + 1), dtype=np.int64)
        pts = np.concatenate([np.repeat(firsts, len(rest))[:, None],
                              np.tile(rest, (len(firsts), 1))], axis=1)
        if cone_m.shape[1]:
            ok = (pts @ cone_m >= 0).all(axis=1)
            pts = pts[ok]
        k = np.maximum((pts @ outer_m).max(axis=1), 0)
        k = k[k <= k_max]
        counts += np.bincount(k, minlength=k_max + 1)[: k_max + 1]
    return WeightVector(D, tuple(int(c) for c in counts))


def hodge_numbers(W, n):
    """H(k) = sum_i (-1)^i C(n, i) W(k - iD) for 0 <= k <= nD.

    Entries of ``W`` past nD act as a guard band: the corresponding H(k) must
    vanish, otherwise ValueError is raised.
    """
    D = W.D
    top = n * D
    if W.k_max < top:
        raise InsufficientRange(f"weight numbers stop at k={W.k_max}, need {top}")

    def h(k):
        return sum((-1) ** i * comb(n, i) * W[k - i * D] for i in range(n + 1))

    for k in range(top + 1, W.k_max + 1):
        if h(k) != 0:
            raise ValueError(f"H({k}) = {h(k)} != 0 beyond nD = {top}")
    return HodgeVector(D, n, tuple(h(k) for k in range(top + 1)))


def hodge_polygon(H):
    """Segments of slope k/D and length H(k), in increasing k."""
    return RationalPolygon.from_slopes(
        (Fraction(k, H.D), h) for k, h in enumerate(H.numbers) if h
    )


# -- diagonal, equilateral ---------------------------------------------------

def diag_equilateral_W(n, m, k):
    """Weight numbers of x_1^m + ... + x_n^m (dimension 0: the point {0})."""
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0:
        return 0
    return binom(n - 1 + k, n - 1)


def diag_equilateral_H(n, m, k):
    return sum((-1) ** i * binom(n, i) * binom(n - 1 + k - i * m, n - 1)
               for i in range(n + 1))


def diag_equilateral_hp_vertices(n, m):
    """Closed-form Hodge polygon vertices of x_1^m + ... + x_n^m."""
    pts = [(Fraction(0), Fraction(0))]
    for j in range(n * m + 1):
        top = j // m
        x = sum((-1) ** i * binom(n, i) * binom(n + j - i * m, n) for i in range(top + 1))
        y = Fraction(sum((-1) ** i * binom(n, i)
                         * (n * binom(n + j - i * m, n + 1) + i * m * binom(n + j - i * m, n))
                         for i in range(top + 1)), m)
        if (x, y) != pts[-1]:
            pts.append((Fraction(x), y))
    return pts


# -- diagonal, two coprime exponents ------------------------------------------

def _frac(x):
    return x - floor(x)


def popoviciu_W(m1, m2, k):
    """#{(x1, x2) in N^2 : m2 x1 + m1 x2 = k} for coprime m1, m2."""
    if gcd(m1, m2) != 1:
        raise NotCoprime(f"gcd({m1}, {m2}) != 1")
    if k < 0:
        return 0
    inv1 = pow(m1, -1, m2) if m2 > 1 else 0
    inv2 = pow(m2, -1, m1) if m1 > 1 else 0
    w = (Fraction(k, m1 * m2) - _frac(Fraction(inv2 * k, m1))
         - _frac(Fraction(inv1 * k, m2)) + 1)
    assert w.denominator == 1
    return int(w)


# -- reflection variants ------------------------------------------------------

def _base_diagonal_W(ms, k, allow_enumeration):
    """Weight numbers of sum x_i^{m_i}, in units of 1/lcm(ms)."""
    n = len(ms)
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0:
        return 0
    if n == 1:
        return 1
    if len(set(ms)) == 1:
        return diag_equilateral_W(n, ms[0], k)
    if n == 2 and gcd(*ms) == 1:
        return popoviciu_W(ms[0], ms[1], k)
    if not allow_enumeration:
        raise UnsupportedParameters(f"no closed-form base case for m = {ms}")
    return _enumerated_reflection(tuple(ms), 0, k)


@lru_cache(maxsize=None)
def _enumerated_weights(ms, j, k_max):
    from .families import FamilySpec, build
    from .lattice import hull_facets

    f = build(FamilySpec("G", len(ms), ms, j))
    return weight_numbers(hull_facets(f.support, len(ms)), k_max)


def _enumerated_reflection(ms, j, k):
    D = reduce(lcm, ms, 1)
    k_max = max(k, len(ms) * D)
    return _enumerated_weights(ms, j, k_max)[k]


def reflection_W(n, m, j, k, allow_enumeration=False):
    """Weight numbers of x_1^{m_1} + ... + x_n^{m_n} + x_1^{-m_1} + ... + x_j^{-m_j}.

    Units are 1/lcm(m).  Equal exponents use the binomial closed form.
    Otherwise the polytope is split along x_j = 0:
        W^j(k) = 2 W^{j-1}(k) - W_slice(k'),
    where the slice drops coordinate j and k' rescales k to the slice's own
    denominator (the slice term vanishes when k' is not an integer).
    """
    m = tuple(m)
    if len(m) != n or not 0 <= j <= n:
        raise ValueError("need len(m) == n and 0 <= j <= n")
    if k < 0:
        return 0
    if n and len(set(m)) == 1:
        return sum(2 ** (j - i) * (-1) ** i * comb(j, i) * diag_equilateral_W(n - i, m[0], k)
                   for i in range(j + 1))
    if j == 0:
        return _base_diagonal_W(m, k, allow_enumeration)
    D = reduce(lcm, m, 1)
    rest = m[: j - 1] + m[j:]
    D_slice = reduce(lcm, rest, 1)
    scaled = Fraction(k * D_slice, D)
    slice_w = 0
    if scaled.denominator == 1:
        slice_w = reflection_W(n - 1, rest, j - 1, int(scaled), allow_enumeration)
    return 2 * reflection_W(n, m, j - 1, k, allow_enumeration) - slice_w


# -- Kloosterman variants -----------------------------------------------------

def kloosterman_equilateral_W(n, m, j, k):
    """Weight numbers of x_1^m + ... + x_n^m + (x_1 ... x_j)^{-1}, 0 <= k <= nm."""
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= n")
    if k < 0 or k > n * m:
        raise OutOfRange(f"k = {k} outside [0, {n * m}]")
    total = binom(n - 1 + k, n - 1)
    for s in range(1, j + 1):
        beta = 0 if (j == n and s == n) else comb(j, s)
        if beta:
            total += beta * sum(binom(k - l * m + n - j - 1, n - s - 1) for l in range(1, n + 1))
    if j == n and k > 0 and k % m == 0:
        total += 1
    return total


def _is_prime(x):
    return x >= 2 and all(x % d for d in range(2, int(x ** 0.5) + 1))


def kloosterman_2d_W(m1, m2, j, k, check_domain=True):
    """Weight numbers of x_1^{m_1} + x_2^{m_2} + (x_1 ... x_j)^{-1}, n = 2.

    The extra term counts k in [D, 2D) with gcd(k, D) > 1.  That is right for
    j = 2 when m1, m2 are distinct primes; for j = 1 (only multiples of m1
    gain a point) and for composite exponents it overcounts, so outside that
    domain OutsideValidityDomain is raised.  ``check_domain=False`` evaluates
    the formula anyway, to exhibit where it breaks.  See
    kloosterman_2d_W_general for a rule valid for all coprime pairs.
    """
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    if check_domain:
        if not (m1 != m2 and _is_prime(m1) and _is_prime(m2)):
            raise OutsideValidityDomain(f"({m1}, {m2}) are not distinct primes")
        if j != 2:
            raise OutsideValidityDomain("the gcd rule overcounts for j = 1")
    D = m1 * m2
    if k < 0 or k > 2 * D:
        raise OutOfRange(f"k = {k} outside [0, {2 * D}]")
    extra = 0
    if k == 2 * D:
        extra = 1 + j
    elif D <= k < 2 * D and gcd(k, D) > 1:
        extra = 1
    return popoviciu_W(m1, m2, k) + extra


def kloosterman_2d_extra(m1, m2, j, k):
    """Points of weight k/D beyond the diagonal count, for coprime m1, m2.

    The extra monomial adds the segment from (-1, ...) to 2 * (-1, ...); the
    lattice points over it sit at k = D, at k = 2D (1 + j of them), and at
    multiples of m1 (and of m2 when j = 2) strictly between.
    """
    D = m1 * m2
    if k == 2 * D:
        return 1 + j
    if k == D:
        return 1
    if D < k < 2 * D:
        return (k % m1 == 0) + (j == 2 and k % m2 == 0)
    return 0


def kloosterman_2d_W_general(m1, m2, j, k):
    """Weight numbers of x_1^{m_1} + x_2^{m_2} + (x_1 ... x_j)^{-1} for any coprime m1, m2."""
    if gcd(m1, m2) != 1:
        raise NotCoprime(f"gcd({m1}, {m2}) != 1")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    D = m1 * m2
    if k < 0 or k > 2 * D:
        raise OutOfRange(f"k = {k} outside [0, {2 * D}]")
    return popoviciu_W(m1, m2, k) + kloosterman_2d_extra(m1, m2, j, k)
