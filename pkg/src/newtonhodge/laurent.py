"""Sparse Laurent polynomials over F_q, q = p^a."""

from dataclasses import dataclass


@dataclass(frozen=True)
class LaurentPolynomial:
    """f = sum coef * x^exp.

    ``terms`` maps exponent tuples to coefficients in F_q, q = p^a, each stored
    as its base-p digit tuple (length a, constant term first) relative to the
    default modulus of F_q.  Zero coefficients are dropped on construction.
    """

    n: int
    terms: tuple  # tuple[(exp tuple, coef digit tuple)], sorted by exponent
    p: int
    a: int = 1

    @classmethod
    def from_terms(cls, n, terms, p, a=1):
        merged = {}
        for exp, coef in terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not have length {n}")
            digits = _digits(coef, p, a)
            old = merged.get(exp, (0,) * a)
            merged[exp] = tuple(_reduce(x + y, p) for x, y in zip(old, digits))
        items = tuple(sorted((e, c) for e, c in merged.items() if any(c)))
        return cls(n, items, p, a)

    @property
    def support(self):
        return [e for e, _ in self.terms]

    def is_separable(self):
        """True when every monomial involves at most one variable."""
        return all(sum(1 for x in e if x) <= 1 for e in self.support)

    def variable_pieces(self):
        """Split a separable polynomial into one-variable pieces g_i(x_i).

        Returns (constant digit tuple or None, list of per-variable term lists
        with scalar exponents).
        """
        const = None
        pieces = [[] for _ in range(self.n)]
        for e, c in self.terms:
            nz = [i for i, x in enumerate(e) if x]
            if not nz:
                const = c
            elif len(nz) == 1:
                pieces[nz[0]].append((e[nz[0]], c))
            else:
                raise ValueError("polynomial is not separable")
        return const, pieces

    def to_json(self):
        return {
            "p": self.p,
            "a": self.a,
            "n": self.n,
            "terms": [
                {"coef": list(c) if self.a > 1 else c[0], "exp": list(e)}
                for e, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data):
        p, a, n = int(data["p"]), int(data.get("a", 1)), int(data["n"])
        return cls.from_terms(n, [(t["exp"], t["coef"]) for t in data["terms"]], p, a)


def _reduce(x, p):
    return x % p if p else x


def _digits(coef, p, a):
    if isinstance(coef, int):
        return (_reduce(coef, p),) + (0,) * (a - 1)
    coef = tuple(_reduce(int(c), p) for c in coef)
    if len(coef) > a:
        raise ValueError(f"coefficient {coef} has more than {a} digits")
    return coef + (0,) * (a - len(coef))
