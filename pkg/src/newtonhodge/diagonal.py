"""Diagonal exponent matrices: Smith normal form, the group S(M) and orbit slopes.

For a diagonal Laurent polynomial with exponent vectors V_1..V_n (the columns
of M), S(M) is the set of r in [0,1)^n with M r = 0 mod 1.  Multiplication by
p permutes S(M); averaging the coordinate sum |r| along each orbit gives the
slopes of the Newton polygon.
"""

from collections import Counter
from fractions import Fraction
from itertools import product

from ._linalg import det_int
from .errors import BudgetExceeded, DegeneratePrime, SingularMatrix

DEFAULT_GROUP_BUDGET = 10**6


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def smith_normal_form(M):
    """(U, S, V) with U M V = S diagonal, s_1 | s_2 | ..., U and V unimodular."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    if det_int(A) == 0:
        raise SingularMatrix("matrix is singular")
    U, V = _identity(n), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A + V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(n):
        while True:
            # smallest nonzero entry of the remaining block goes to (t, t)
            _, i, j = min((abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j])
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            done = True
            for i in range(t + 1, n):
                q = A[i][t] // piv
                add_row(t, i, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // piv
                add_col(t, j, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    S = [row[:] for row in A]
    return U, S, V


def invariant_factors(M):
    _, S, _ = smith_normal_form(M)
    return [S[i][i] for i in range(len(S))]


def largest_invariant_factor(M):
    return invariant_factors(M)[-1]


def sdelta_group(M, budget=DEFAULT_GROUP_BUDGET):
    """All r in ([0,1) n Q)^n with M r = 0 mod 1, sorted."""
    U, S, V = smith_normal_form(M)
    n = len(S)
    factors = [S[i][i] for i in range(n)]
    size = 1
    for s in factors:
        size *= s
    if size > budget:
        raise BudgetExceeded(f"|S(M)| = {size} exceeds budget {budget}", required=size)
    out = set()
    for ts in product(*[range(s) for s in factors]):
        y = [Fraction(t, s) for t, s in zip(ts, factors)]
        r = tuple((sum(V[i][k] * y[k] for k in range(n))) % 1 for i in range(n))
        out.add(r)
    assert len(out) == size
    return sorted(out)


def orbit_slopes(M, p, budget=DEFAULT_GROUP_BUDGET):
    """Sorted (slope, multiplicity) pairs from average norms along [p]-orbits."""
    det = det_int(M)
    if det == 0:
        raise SingularMatrix("matrix is singular")
    if det % p == 0:
        raise DegeneratePrime(f"p = {p} divides det M = {det}")
    seen, slopes = set(), Counter()
    for r in sdelta_group(M, budget):
        if r in seen:
            continue
        orbit, x = [], r
        while x not in orbit:
            orbit.append(x)
            x = tuple((p * c) % 1 for c in x)
        avg = sum(sum(x) for x in orbit) / len(orbit)
        seen.update(orbit)
        slopes[avg] += len(orbit)
    return sorted(slopes.items())


def diagonal_matrix(exponents):
    """Exponent matrix with the given vectors as columns."""
    return [list(col) for col in zip(*exponents)]
