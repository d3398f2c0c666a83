"""Finite fields F_{p^d} for exhaustive point counting.

Elements are plain ints: the base-p digits of an element are its coefficients
in the polynomial basis 1, x, ..., x^{d-1} of F_p[x]/(modulus).  Point counting
never multiplies field elements one by one; it works in log coordinates
through the array ``trace_powers()[e] = Tr(g^e)`` for a fixed primitive g.
"""

from functools import cached_property
from math import isqrt

import numpy as np

from .errors import BudgetExceeded, NotPrime, ZeroCoordinate

DEFAULT_TABLE_BUDGET = 1 << 22
DEFAULT_FIELD_BUDGET = 1 << 26


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p, coefficient lists low -> high ----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, f, p):
    """a mod f for monic f."""
    a = list(a)
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return _trim(a[:d])


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _polymulmod(a, b, f, p):
    return _polymod(_polymul(a, b, p), f, p)


def _polysub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _polymod(a, b, p)
    return a


def _polypowmod(a, e, f, p):
    result = [1]
    base = _polymod(a, f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def is_irreducible(f, p):
    """Ben-Or test: f monic of degree d has no factor of degree <= d/2."""
    d = len(f) - 1
    if d <= 1:
        return d == 1
    xp = [0, 1]
    for _ in range(d // 2):
        xp = _polypowmod(xp, p, f, p)
        if len(_polygcd(f, _polysub(xp, [0, 1], p), p)) > 1:
            return False
    return True


def irreducible_modulus(p, d, rank=0):
    """The rank-th monic irreducible of degree d in lexicographic order.

    Polynomials are ordered by their coefficient vectors read from x^{d-1}
    down to the constant term.  The rank wraps around when there are fewer
    irreducibles than requested (only possible for tiny p^d).
    """
    found = []
    for code in range(p ** d):
        low = [(code // p ** i) % p for i in range(d)]
        f = low + [1]
        if is_irreducible(f, p):
            if len(found) == rank:
                return tuple(f)
            found.append(tuple(f))
    return found[rank % len(found)]


# -- the field -----------------------------------------------------------------

class FieldCtx:
    """F_{p^d} = F_p[x]/(modulus).  Immutable once built; safe to share."""

    def __init__(self, p, d=1, modulus_rank=0, table_budget=DEFAULT_TABLE_BUDGET,
                 budget=DEFAULT_FIELD_BUDGET):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be positive")
        q = p ** d
        if q > budget:
            raise BudgetExceeded(f"field of size {q} exceeds budget {budget}", required=q)
        self.p, self.d, self.q = p, d, q
        self.order = q - 1
        self.modulus_rank = modulus_rank
        self.modulus = irreducible_modulus(p, d, modulus_rank)
        self._pow_p = np.array([p ** i for i in range(d)], dtype=np.int64)
        self.log_table = self.antilog_table = None
        self.gen = self._find_generator()
        if q <= table_budget:
            self._build_tables()

    def __repr__(self):
        return f"FieldCtx(p={self.p}, d={self.d}, modulus={self.modulus})"

    # conversions
    def digits(self, x):
        return [(x // self.p ** i) % self.p for i in range(self.d)]

    def from_digits(self, ds):
        return sum(int(c) % self.p * self.p ** i for i, c in enumerate(ds))

    # arithmetic
    def add(self, x, y):
        return self.from_digits([a + b for a, b in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        return self.from_digits([-a for a in self.digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar(self, c, x):
        return self.from_digits([c * a for a in self.digits(x)])

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        if self.log_table is not None:
            return int(self.antilog_table[(self.log_table[x] + self.log_table[y]) % self.order])
        return self._polymul(x, y)

    def _polymul(self, x, y):
        prod = _polymulmod(self.digits(x), self.digits(y), list(self.modulus), self.p)
        return self.from_digits(prod)

    def pow(self, x, e):
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        e %= self.order
        if self.log_table is not None:
            return int(self.antilog_table[(self.log_table[x] * e) % self.order])
        result, base = 1, x
        while e:
            if e & 1:
                result = self._polymul(result, base)
            base = self._polymul(base, base)
            e >>= 1
        return result

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(x, -1)

    def trace(self, x):
        """Tr_{F_{p^d}/F_p}(x) via the functional Tr(x^j) on the power basis."""
        return int(sum(l * c for l, c in zip(self.trace_functional, self.digits(x))) % self.p)

    def trace_frobenius(self, x):
        """Tr(x) as x + x^p + ... + x^{p^{d-1}}; slow reference definition."""
        total, y = 0, x
        for _ in range(self.d):
            total = self.add(total, y)
            y = self.pow(y, self.p)
        assert total < self.p
        return total

    @cached_property
    def companion(self):
        """Matrix of multiplication by x on the power basis."""
        d, p = self.d, self.p
        c = np.zeros((d, d), dtype=np.int64)
        for j in range(d - 1):
            c[j + 1, j] = 1
        for i in range(d):
            c[i, d - 1] = (-self.modulus[i]) % p
        return c

    @cached_property
    def trace_functional(self):
        """l_j = Tr(x^j) for j < d, the trace of the j-th companion power."""
        out, m = [], np.eye(self.d, dtype=np.int64)
        for _ in range(self.d):
            out.append(int(np.trace(m)) % self.p)
            m = (self.companion @ m) % self.p
        return tuple(out)

    def mult_matrix(self, x):
        """Matrix of multiplication by x (columns are x * x^j)."""
        cols = []
        for j in range(self.d):
            cols.append(self.digits(self._polymul(x, self.p ** j)))
        return np.array(cols, dtype=np.int64).T

    # generator and logs
    def _find_generator(self):
        if self.order == 1:
            return 1
        exps = [self.order // r for r in prime_factors(self.order)]
        for x in range(1, self.q):
            if all(self.pow(x, e) != 1 for e in exps):
                return x
        raise AssertionError("no primitive element found")

    def _power_vectors(self, count):
        """Digit vectors of g^e for e < count, shape (count, d)."""
        p, d = self.p, self.d
        block = max(1, isqrt(count))
        mg = self.mult_matrix(self.gen)
        w = np.zeros((d, block), dtype=np.int64)
        v = np.zeros(d, dtype=np.int64)
        v[0] = 1
        for r in range(block):
            w[:, r] = v
            v = (mg @ v) % p
        step = self.mult_matrix(self.pow(self.gen, block))
        out = np.empty((count, d), dtype=np.int64)
        cur = np.eye(d, dtype=np.int64)
        for start in range(0, count, block):
            stop = min(start + block, count)
            out[start:stop] = ((cur @ w[:, : stop - start]) % p).T
            cur = (step @ cur) % p
        return out

    def _build_tables(self):
        anti = self._power_vectors(self.order) @ self._pow_p
        log = np.zeros(self.q, dtype=np.int64)
        log[anti] = np.arange(self.order, dtype=np.int64)
        self.antilog_table = anti
        self.log_table = log

    def power_digits(self):
        """Digit vectors of g^e for every e in Z/(q-1)."""
        if self.antilog_table is not None:
            a = self.antilog_table
            return (a[:, None] // self._pow_p[None, :]) % self.p
        return self._power_vectors(self.order)

    @cached_property
    def _trace_powers(self):
        ell = np.array(self.trace_functional, dtype=np.int64)
        if self.antilog_table is not None:
            return (self.power_digits() @ ell) % self.p
        # blocked: Tr(g^{Bt + r}) = (l^T M(g^{Bt})) . vec(g^r)
        p, d, count = self.p, self.d, self.order
        block = max(1, isqrt(count))
        mg = self.mult_matrix(self.gen)
        w = np.zeros((d, block), dtype=np.int64)
        v = np.zeros(d, dtype=np.int64)
        v[0] = 1
        for r in range(block):
            w[:, r] = v
            v = (mg @ v) % p
        step = self.mult_matrix(self.pow(self.gen, block))
        nblocks = -(-count // block)
        rows = np.empty((nblocks, d), dtype=np.int64)
        row = ell.copy()
        for t in range(nblocks):
            rows[t] = row
            row = (row @ step) % p
        return ((rows @ w) % p).reshape(-1)[:count]

    def trace_powers(self):
        """Array T with T[e] = Tr(g^e) for e in Z/(q-1); computed once."""
        return self._trace_powers

    def log(self, x):
        """Discrete log base ``gen``."""
        if x == 0:
            raise ZeroDivisionError("log of 0")
        if self.log_table is not None:
            return int(self.log_table[x])
        m = isqrt(self.order) + 1
        baby, y = {}, 1
        for j in range(m):
            baby.setdefault(y, j)
            y = self._polymul(y, self.gen)
        giant = self.pow(self.gen, -m)
        y = x
        for i in range(m + 1):
            if y in baby:
                return (i * m + baby[y]) % self.order
            y = self._polymul(y, giant)
        raise AssertionError("discrete log not found")

    # subfield embedding
    def embed(self, digits, a):
        """Image of the F_{p^a} element with the given digits (default modulus).

        Uses the root of the F_{p^a} modulus of smallest log among the powers
        of g^{(q-1)/(p^a-1)}; any root gives the same exponential sums.
        """
        digits = list(digits) + [0] * (a - len(digits))
        if a == 1:
            return digits[0] % self.p
        if self.d % a:
            raise ValueError(f"F_(p^{a}) does not embed in F_(p^{self.d})")
        rho = self._subfield_root(a)
        total, power = 0, 1
        for c in digits:
            total = self.add(total, self.scalar(c, power))
            power = self.mul(power, rho)
        return total

    def _subfield_root(self, a):
        cache = self.__dict__.setdefault("_roots", {})
        if a not in cache:
            mu = irreducible_modulus(self.p, a)
            h = self.pow(self.gen, self.order // (self.p ** a - 1))
            z = 1
            for _ in range(self.p ** a - 1):
                val, zp = 0, 1
                for c in mu:
                    val = self.add(val, self.scalar(c, zp))
                    zp = self.mul(zp, z)
                if val == 0:
                    cache[a] = z
                    break
                z = self.mul(z, h)
            else:
                raise AssertionError("subfield modulus has no root")
        return cache[a]

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)


def field_create(p, d=1, **kwargs):
    return FieldCtx(p, d, **kwargs)


def trace(ctx, x):
    return ctx.trace(x)


def evaluate(ctx, f, point):
    """Value of the Laurent polynomial f at a torus point of ctx."""
    if len(point) != f.n:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.n}")
    if any(x == 0 for x in point):
        raise ZeroCoordinate("Laurent polynomials are evaluated on the torus only")
    total = 0
    for exp, coef in f.terms:
        term = ctx.embed(coef, f.a)
        for x, e in zip(point, exp):
            term = ctx.mul(term, ctx.pow(x, e))
        total = ctx.add(total, term)
    return total
