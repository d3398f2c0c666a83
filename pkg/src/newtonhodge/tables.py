"""Reference weight/Hodge tables for the two- and three-variable families.

Each table is a list of rows (k, quantity, computed, expected, printed):
``computed`` comes from the lattice-point enumerator, ``expected`` is the
closed reference pattern, and ``printed`` is the value as originally
tabulated where that differs from ``expected`` (known misprints).

Table ids:
  1  x1^m1 + x2^m2, gcd(m1, m2) = 1            (H)
  2  G^0_{2,m}                                 (W, H)
  3  G^1_{2,m}                                 (W, H)
  4  G^2_{2,m}                                 (W, H; two W misprints)
  5  K^2_{2,m}                                 (W, H)
  6  W(K^3_{3,m}) - W(G^0_{3,m})               (difference)
  7  G^1, G^2 for coprime (m1, m2)             (H; informational, the pattern goes negative)
"""

from dataclasses import dataclass
from functools import lru_cache

from .families import FamilySpec, support_of
from .hodge import hodge_numbers, popoviciu_W, weight_numbers
from .lattice import hull_facets

TABLE_NAMES = {
    1: "diag-coprime",
    2: "G0-equilateral",
    3: "G1-equilateral",
    4: "G2-equilateral",
    5: "K2-equilateral",
    6: "K3-difference",
    7: "reflection-coprime",
}
ALIASES = {name: key for key, name in TABLE_NAMES.items()}

DEFAULT_MS = tuple(range(2, 7))
DEFAULT_PAIRS = ((2, 3), (2, 5), (3, 5))
DEFAULT_K3_MS = tuple(range(2, 6))


@dataclass(frozen=True)
class TableRow:
    table: int
    family: str
    k: int
    quantity: str
    computed: int
    expected: int
    printed: int

    @property
    def ok(self):
        return self.computed == self.expected


@lru_cache(maxsize=None)
def _enumerated(kind, n, m, j):
    spec = FamilySpec(kind, n, m, j)
    poly = hull_facets(support_of(spec), n)
    W = weight_numbers(poly)
    return spec, W, hodge_numbers(W, n)


def _rows(table, kind, n, m, j, expected_W=None, expected_H=None, printed_W=None):
    spec, W, H = _enumerated(kind, n, tuple(m), j)
    label = spec.label()
    top = n * W.D
    out = []
    for k in range(top + 1):
        if expected_W is not None:
            e = expected_W(k)
            pr = printed_W(k) if printed_W else e
            out.append(TableRow(table, label, k, "W", W[k], e, pr))
        if expected_H is not None:
            e = expected_H(k)
            out.append(TableRow(table, label, k, "H", H[k], e, e))
    return out


def table_diag_coprime(m1, m2):
    D = m1 * m2

    def h(k):
        if k < D:
            return popoviciu_W(m1, m2, k)
        if k == D or k == 2 * D:
            return 0
        return 1 - popoviciu_W(m1, m2, k - D)

    return _rows(1, "D", 2, (m1, m2), 0, expected_H=h)


def table_g0(m):
    return _rows(2, "G", 2, (m, m), 0,
                 expected_W=lambda k: k + 1,
                 expected_H=lambda k: k + 1 if k < m else max(0, 2 * m - 1 - k))


def table_g1(m):
    return _rows(3, "G", 2, (m, m), 1,
                 expected_W=lambda k: 2 * k + 1,
                 expected_H=lambda k: 2 * k + 1 if k < m else max(0, 4 * m - 1 - 2 * k))


def table_g2(m):
    def w(k):
        return 1 if k == 0 else 4 * k

    def printed(k):
        # the tabulated row lists 4(m+1) at k = m and 4(m+3) at k = m+1
        if k == m:
            return 4 * (m + 1)
        if k == m + 1:
            return 4 * (m + 3)
        return w(k)

    def h(k):
        if k == 0 or k == 2 * m:
            return 1
        if k < m:
            return 4 * k
        if k == m:
            return 4 * m - 2
        return 4 * (2 * m - k)

    return _rows(4, "G", 2, (m, m), 2, expected_W=w, expected_H=h, printed_W=printed)


def table_k2(m):
    def w(k):
        if k < m:
            return k + 1
        if k == m:
            return m + 2
        if k < 2 * m:
            return k + 3
        return 2 * m + 4

    def h(k):
        if k < m:
            return k + 1
        if k == m:
            return m
        return 2 * m + 1 - k

    return _rows(5, "K", 2, (m, m), 2, expected_W=w, expected_H=h)


def table_k3_difference(m):
    def tau(k):
        if k < m:
            return 0
        if k == m:
            return 1
        if k < 2 * m:
            return 3 * (k - m)
        if k == 2 * m:
            return 3 * m + 1
        if k < 3 * m:
            return 3 * m + 6 * (k - 2 * m)
        return 9 * m + 1

    _, Wk, _ = _enumerated("K", 3, (m, m, m), 3)
    _, Wg, _ = _enumerated("G", 3, (m, m, m), 0)
    label = FamilySpec("K", 3, (m, m, m), 3).label()
    return [TableRow(6, label, k, "W-difference", Wk[k] - Wg[k], tau(k), tau(k))
            for k in range(3 * m + 1)]


def table_reflection_coprime(m1, m2):
    """Tabulated H rows for G^1 and G^2 with coprime exponents.

    ``expected`` is the tabulated pattern.  It predicts negative Hodge
    numbers at some k, so this table is reported, not used as a golden
    reference.
    """
    D = m1 * m2

    def w0(k):
        return popoviciu_W(m1, m2, k)

    def h1(k):
        if k < D:
            return 2 * w0(k) - 1
        if k == D:
            return 1
        if k < 2 * D:
            return 3 - 2 * w0(k - D)
        return 0

    def h2(k):
        if k < D:
            return 4 * w0(k) - 4
        if k == D:
            return 4
        if k < 2 * D:
            return 8 - 4 * w0(k - D)
        return 0

    return (_rows(7, "G", 2, (m1, m2), 1, expected_H=h1)
            + _rows(7, "G", 2, (m1, m2), 2, expected_H=h2))


def build_table(table, ms=DEFAULT_MS, pairs=DEFAULT_PAIRS, k3_ms=DEFAULT_K3_MS):
    table = ALIASES.get(table, table)
    table = int(table)
    rows = []
    if table == 1:
        for m1, m2 in pairs:
            rows += table_diag_coprime(m1, m2)
    elif table in (2, 3, 4, 5):
        fn = {2: table_g0, 3: table_g1, 4: table_g2, 5: table_k2}[table]
        for m in ms:
            rows += fn(m)
    elif table == 6:
        for m in k3_ms:
            rows += table_k3_difference(m)
    elif table == 7:
        for m1, m2 in pairs:
            rows += table_reflection_coprime(m1, m2)
    else:
        raise ValueError(f"unknown table {table}")
    return rows


GOLDEN = (1, 2, 3, 4, 5, 6)


def golden_tables(ms=DEFAULT_MS, pairs=DEFAULT_PAIRS, k3_ms=DEFAULT_K3_MS):
    rows = []
    for t in GOLDEN:
        rows += build_table(t, ms, pairs, k3_ms)
    return rows
