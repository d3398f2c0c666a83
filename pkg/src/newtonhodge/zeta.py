"""Exponential sums, L-polynomial coefficients and the p-adic Newton polygon.

For f over F_q (q = p^a) and each k the torus sum
    S_k = sum over x in (F*_{q^k})^n of zeta_p^{Tr f(x)}
is assembled from a trace profile: the number of torus points with each
trace value t in F_p.  Profiles are exact integer counts; three strategies
produce them:

* separable f (every monomial in one variable): per-variable profiles,
  convolved over Z/p;
* one monomial couples several variables: in log coordinates x_i = g^{e_i}
  that monomial only depends on sum v_i e_i, so the count is a cyclic
  convolution over Z/p x Z/(q^k - 1), done with a float FFT and rounded
  (with a residual check);
* anything else: exhaustive enumeration of log tuples.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf, log2

import numpy as np

from .cyclotomic import CyclotomicInt, exp_sum, pi_valuation
from .errors import BudgetExceeded, PolynomialityViolation
from .gf import DEFAULT_TABLE_BUDGET, FieldCtx
from .lattice import hull_facets, normalized_volume
from .laurent import LaurentPolynomial
from .polygon import Verdict, compare_polygons, lower_hull  # noqa: F401  (re-exported)

DEFAULT_EVAL_BUDGET = 2 * 10**9
# total mass of the convolution must stay well inside float64 precision
_FFT_MASS_LIMIT = 2.0**44
_CHUNK = 1 << 20

__all__ = [
    "TraceProfile", "NewtonPolygonResult", "trace_counts", "exp_sum", "l_poly_coeffs",
    "pi_valuation", "newton_polygon", "lower_hull", "compare_polygons", "Verdict",
]


@dataclass(frozen=True)
class TraceProfile:
    p: int
    counts: tuple

    @property
    def total(self):
        return sum(self.counts)


@dataclass(frozen=True)
class NewtonPolygonResult:
    polygon: object
    valuations: tuple  # (i, Fraction or inf) for i = 0..N
    degree: int
    coefficients: tuple = field(repr=False)  # C_0..C_{N+2}
    sums: tuple = field(repr=False)  # S_1..S_{N+2}
    p: int = 0
    a: int = 1

    def to_json(self):
        def rat(x):
            x = Fraction(x)
            return [x.numerator, x.denominator]

        return {
            "p": self.p,
            "a": self.a,
            "degree": self.degree,
            "valuations": [[i, None if v == inf else rat(v)] for i, v in self.valuations],
            "vertices": [[rat(x), rat(y)] for x, y in self.polygon.vertices],
            "slopes": [[rat(s), n] for s, n in self.polygon.slopes],
            "coefficients": [c.to_json() for c in self.coefficients],
        }


# -- trace profiles ------------------------------------------------------------

def _coefficient_logs(f, ctx):
    if ctx.d % f.a:
        raise ValueError(f"F_(p^{f.a}) does not embed in F_(p^{ctx.d})")
    return [(exp, ctx.log(ctx.embed(coef, f.a))) for exp, coef in f.terms]


def _piece_traces(T, Q, p, terms):
    """Tr g(g^w) mod p for every w in Z/Q, g = sum of c x^e over ``terms`` (e, log c)."""
    w = np.arange(Q, dtype=np.int64)
    out = np.zeros(Q, dtype=np.int64)
    for e, lc in terms:
        out += T[(lc + e * w) % Q]
    return out % p


def _conv_p(a, b, p):
    out = [0] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[(i + j) % p] += x * y
    return out


def _shift(counts, s, p):
    return [counts[(t - s) % p] for t in range(p)]


def _classify(f):
    coupling = [(e, c) for e, c in f.terms if sum(1 for x in e if x) > 1]
    if not coupling:
        return "separable", None
    if len(coupling) == 1:
        return "coupled", coupling[0][0]
    return "brute", None


def _strategy(f, Q, p):
    """(name, cost) of the cheapest exact counting strategy."""
    kind, v = _classify(f)
    if kind == "separable":
        return kind, f.n * Q
    if kind == "coupled":
        r = sum(1 for x in v if x)
        if float(Q) ** r <= _FFT_MASS_LIMIT:
            return kind, int(r * p * Q * max(1.0, log2(p * Q))) + f.n * Q
    return "brute", Q ** f.n


def estimate_cost(f, k, modulus_rank=0):
    """Work estimate for trace_counts of f over F_{q^k}."""
    Q = f.p ** (f.a * k) - 1
    return _strategy(f, Q, f.p)[1]


def trace_counts(f, ctx, threads=1, budget=DEFAULT_EVAL_BUDGET):
    """Exact trace profile of f over the torus of ctx."""
    p, Q = ctx.p, ctx.order
    if p != f.p:
        raise ValueError("field characteristic differs from the polynomial's")
    kind, cost = _strategy(f, Q, p)
    if cost > budget:
        raise BudgetExceeded(f"counting needs about {cost} operations, budget {budget}",
                             required=cost)
    T = ctx.trace_powers()
    terms = _coefficient_logs(f, ctx)
    if kind == "brute":
        counts = _brute_counts(f.n, terms, T, Q, p, threads)
    else:
        counts = _structured_counts(f.n, terms, T, Q, p, threads, kind)
    profile = TraceProfile(p, tuple(int(c) for c in counts))
    assert profile.total == Q ** f.n
    return profile


def _split_terms(n, terms):
    const_shift_terms, pieces, coupling = [], [[] for _ in range(n)], None
    for exp, lc in terms:
        nz = [i for i, x in enumerate(exp) if x]
        if not nz:
            const_shift_terms.append(lc)
        elif len(nz) == 1:
            pieces[nz[0]].append((exp[nz[0]], lc))
        else:
            coupling = (exp, lc)
    return const_shift_terms, pieces, coupling


def _structured_counts(n, terms, T, Q, p, threads, kind):
    consts, pieces, coupling = _split_terms(n, terms)
    coupled = [i for i in range(n) if coupling and coupling[0][i]]
    counts = [0] * p
    counts[0] = 1
    for i in range(n):
        if i in coupled:
            continue
        tr = _piece_traces(T, Q, p, pieces[i])
        counts = _conv_p(counts, [int(c) for c in np.bincount(tr, minlength=p)], p)
    if coupled:
        counts = _conv_p(counts, _coupled_counts(coupled, pieces, coupling, T, Q, p, threads), p)
    shift = sum(int(T[lc]) for lc in consts) % p
    return _shift(counts, shift, p)


def _histogram(tr, v, w, Q, p):
    """2-D counts over (trace value, v * w mod Q)."""
    idx = tr * Q + (v * w) % Q
    return np.bincount(idx, minlength=p * Q).reshape(p, Q).astype(np.float64)


def _coupled_counts(coupled, pieces, coupling, T, Q, p, threads):
    v, lc = coupling
    w_all = np.arange(Q, dtype=np.int64)
    first, rest = coupled[0], coupled[1:]
    spectrum = None
    for i in rest:
        tr = _piece_traces(T, Q, p, pieces[i])
        fx = np.fft.fft2(_histogram(tr, v[i], w_all, Q, p))
        spectrum = fx if spectrum is None else spectrum * fx
    tr_first = _piece_traces(T, Q, p, pieces[first])

    def chunk(bounds):
        lo, hi = bounds
        w = w_all[lo:hi]
        fx = np.fft.fft2(_histogram(tr_first[lo:hi], v[first], w, Q, p))
        raw = np.fft.ifft2(fx * spectrum).real
        rounded = np.rint(raw)
        if np.abs(raw - rounded).max() > 0.25:
            raise ArithmeticError("FFT convolution lost exactness")
        return rounded.astype(np.int64)

    nchunks = max(1, int(threads))
    step = -(-Q // nchunks)
    bounds = [(lo, min(lo + step, Q)) for lo in range(0, Q, step)]
    if nchunks > 1:
        with ThreadPoolExecutor(max_workers=nchunks) as pool:
            parts = list(pool.map(chunk, bounds))
    else:
        parts = [chunk(b) for b in bounds]
    R = parts[0]
    for part in parts[1:]:
        R = R + part
    # R[tau, s]: coupled tuples with piece-trace sum tau and sum v_i e_i = s
    zt = T[(lc + np.arange(Q, dtype=np.int64)) % Q]
    out = [0] * p
    for t3 in range(p):
        col = R[:, zt == t3].sum(axis=1)
        for tau in range(p):
            out[(tau + t3) % p] += int(col[tau])
    return out


def _brute_counts(n, terms, T, Q, p, threads):
    exps = np.array([e for e, _ in terms], dtype=np.int64).reshape(-1, n)
    logs = np.array([lc for _, lc in terms], dtype=np.int64)
    inner = Q ** (n - 1)
    step = max(1, _CHUNK // max(inner, 1))
    if n > 1:
        grids = np.meshgrid(*[np.arange(Q, dtype=np.int64)] * (n - 1), indexing="ij")
        rest = np.stack([g.reshape(-1) for g in grids], axis=1)
    else:
        rest = np.zeros((1, 0), dtype=np.int64)

    def chunk(lo):
        firsts = np.arange(lo, min(lo + step, Q), dtype=np.int64)
        pts = np.concatenate([np.repeat(firsts, len(rest))[:, None],
                              np.tile(rest, (len(firsts), 1))], axis=1)
        idx = (pts @ exps.T + logs[None, :]) % Q
        tr = T[idx].sum(axis=1) % p
        return np.bincount(tr, minlength=p)

    starts = list(range(0, Q, step))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            parts = list(pool.map(chunk, starts))
    else:
        parts = [chunk(s) for s in starts]
    out = [0] * p
    for part in parts:
        for t in range(p):
            out[t] += int(part[t])
    return out


# -- L-polynomial ----------------------------------------------------------------

def l_poly_coeffs(sums, n):
    """C_0..C_M of exp(eps * sum_k S_k T^k / k), eps = (-1)^{n-1}.

    Uses i C_i = eps * sum_{j<=i} S_j C_{i-j}; every division by i must be exact.
    """
    if not sums:
        return []
    p = sums[0].p
    eps = 1 if n % 2 == 1 else -1
    C = [CyclotomicInt.integer(p, 1)]
    for i in range(1, len(sums) + 1):
        acc = CyclotomicInt.integer(p, 0)
        for j in range(1, i + 1):
            acc = acc + sums[j - 1] * C[i - j]
        C.append((acc * eps).exact_div(i))
    return C


def _lift_sums(sums, degree, count):
    """Extend S_1.. of a one-variable polynomial whose L-polynomial has the given degree."""
    C = l_poly_coeffs(sums[: degree + 2], 1)
    _check_tail(C, degree)
    C = C[: degree + 1]
    p = sums[0].p
    zero = CyclotomicInt.integer(p, 0)
    out = list(sums[: degree + 2])
    for k in range(len(out) + 1, count + 1):
        acc = (C[k] if k <= degree else zero) * k
        for j in range(1, k):
            if k - j <= degree:
                acc = acc - out[j - 1] * C[k - j]
        out.append(acc)
    return out[:count]


def _check_tail(C, degree):
    for i in range(degree + 1, len(C)):
        if not C[i].is_zero():
            raise PolynomialityViolation(f"C_{i} = {C[i].coeffs} is nonzero beyond degree {degree}")


def _field(p, d, modulus_rank, table_budget):
    return FieldCtx(p, d, modulus_rank=modulus_rank, table_budget=table_budget)


def _separable_sums(f, count, threads, budget, modulus_rank, table_budget):
    const, pieces = f.variable_pieces()
    p, a = f.p, f.a
    piece_sums = []
    for i, piece in enumerate(pieces):
        g = LaurentPolynomial.from_terms(1, [((e,), c) for e, c in piece], p, a)
        exps = [e for e, _ in piece]
        deg = max(0, max(exps)) - min(0, min(exps))
        direct = min(count, deg + 2)
        sums = []
        for k in range(1, direct + 1):
            ctx = _field(p, a * k, modulus_rank, table_budget)
            sums.append(exp_sum(trace_counts(g, ctx, threads, budget)))
        if count > direct:
            sums = _lift_sums(sums, deg, count)
        else:
            C = l_poly_coeffs(sums, 1)
            if len(C) > deg + 1:
                _check_tail(C, deg)
        piece_sums.append(sums)
    shift = 0
    if const is not None:
        base = _field(p, a, modulus_rank, table_budget)
        shift = base.trace(base.embed(const, a))
    out = []
    for k in range(1, count + 1):
        s = CyclotomicInt.zeta_power(p, k * shift)
        for sums in piece_sums:
            s = s * sums[k - 1]
        out.append(s)
    return out


def exponential_sums(f, count, threads=1, budget=DEFAULT_EVAL_BUDGET, modulus_rank=0,
                     table_budget=DEFAULT_TABLE_BUDGET):
    """S_1..S_count of f as cyclotomic integers."""
    if f.is_separable():
        return _separable_sums(f, count, threads, budget, modulus_rank, table_budget)
    out = []
    for k in range(1, count + 1):
        ctx = _field(f.p, f.a * k, modulus_rank, table_budget)
        out.append(exp_sum(trace_counts(f, ctx, threads, budget)))
    return out


def newton_polygon(f, threads=1, budget=DEFAULT_EVAL_BUDGET, modulus_rank=0,
                   table_budget=DEFAULT_TABLE_BUDGET):
    """Newton polygon of the L-polynomial of f (f non-degenerate).

    Computes N + 2 exponential sums, N = n! Vol(Delta(f)), and insists that
    the two coefficients past the expected degree vanish exactly.
    """
    poly = hull_facets(f.support, f.n)
    N = normalized_volume(poly)
    sums = exponential_sums(f, N + 2, threads, budget, modulus_rank, table_budget)
    C = l_poly_coeffs(sums, f.n)
    _check_tail(C, N)
    scale = (f.p - 1) * f.a
    vals = []
    for i in range(N + 1):
        v = pi_valuation(C[i])
        vals.append((i, inf if v == inf else Fraction(v, scale)))
    polygon = lower_hull(vals)
    return NewtonPolygonResult(polygon, tuple(vals), N, tuple(C), tuple(sums), f.p, f.a)
