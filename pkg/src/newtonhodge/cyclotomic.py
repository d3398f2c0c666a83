"""Exact arithmetic in Z[zeta_p] on the power basis 1, zeta, ..., zeta^{p-2}."""

from dataclasses import dataclass
from math import inf

from ._linalg import det_int
from .errors import InexactDivision


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coeffs: tuple  # length p - 1

    @classmethod
    def from_full(cls, p, values):
        """sum values[t] * zeta^t for t < p, reduced with zeta^{p-1} = -(1 + ... + zeta^{p-2})."""
        vals = [0] * p
        for t, v in enumerate(values):
            vals[t % p] += int(v)
        top = vals[p - 1]
        return cls(p, tuple(v - top for v in vals[: p - 1]))

    @classmethod
    def integer(cls, p, c):
        return cls(p, (int(c),) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p, t):
        vals = [0] * p
        vals[t % p] = 1
        return cls.from_full(p, vals)

    def _check(self, other):
        if isinstance(other, int):
            return CyclotomicInt.integer(self.p, other)
        if other.p != self.p:
            raise ValueError("mixing different cyclotomic rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CyclotomicInt.from_full(p, full)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coeffs)

    def exact_div(self, n):
        """Divide by a nonzero integer; the quotient must lie in Z[zeta_p]."""
        if any(c % n for c in self.coeffs):
            raise InexactDivision(f"{self.coeffs} is not divisible by {n}")
        return CyclotomicInt(self.p, tuple(c // n for c in self.coeffs))

    def multiplication_matrix(self):
        cols = [(self * CyclotomicInt.zeta_power(self.p, j)).coeffs for j in range(self.p - 1)]
        return [list(row) for row in zip(*cols)]

    def norm(self):
        """Norm to Q: determinant of multiplication on the power basis."""
        return det_int(self.multiplication_matrix())

    def to_json(self):
        return list(self.coeffs)


def pi_valuation(c):
    """Valuation at pi = 1 - zeta_p, i.e. v_p of the norm; inf for 0."""
    if c.is_zero():
        return inf
    n = abs(c.norm())
    v = 0
    while n % c.p == 0:
        n //= c.p
        v += 1
    return v


def exp_sum(profile):
    """sum_t counts[t] zeta^t for a trace profile."""
    return CyclotomicInt.from_full(profile.p, profile.counts)
