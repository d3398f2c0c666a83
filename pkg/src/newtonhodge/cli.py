"""Command-line front end.

Exit codes: 0 when the observation matches the theory, 2 on a mismatch
(a failed prediction or an engine bug), 1 on operational errors.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import diagonal, families, hodge, zeta
from .errors import (
    EndpointMismatch,
    InexactDivision,
    NewtonHodgeError,
    OutsideValidityDomain,
    PolynomialityViolation,
    UnsupportedParameters,
)
from .lattice import hull_facets, normalized_volume
from .laurent import LaurentPolynomial
from .polygon import Verdict

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2
FORMATS = ("json", "csv", "svg")


class Mismatch(Exception):
    """Observed data disagrees with the expectation."""


@dataclass
class RunConfig:
    command: str
    spec: object = None  # FamilySpec or None
    raw: object = None  # LaurentPolynomial or None
    p: int = None
    a: int = 1
    k_max: int = None
    threads: int = 1
    budget: int = zeta.DEFAULT_EVAL_BUDGET
    fmt: str = "json"
    out: str = None
    verify: bool = False
    r_max: int = 2
    modulus_rank: int = 0
    method: str = "auto"

    def __post_init__(self):
        if self.budget <= 0 or self.threads <= 0:
            raise ValueError("budgets and thread counts must be positive")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")


# -- serialization ---------------------------------------------------------------

def rat(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def polygon_json(poly):
    return {
        "vertices": [[rat(x), rat(y)] for x, y in poly.vertices],
        "slopes": [[rat(s), n] for s, n in poly.slopes],
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_svg(polygons, title=""):
    """Overlay of polygons given as {name: [[[xn, xd], [yn, yd]], ...]} vertex data."""
    colors = ["#1f5fbf", "#c03020", "#208040", "#806020"]
    pts = {name: [(Fraction(*x), Fraction(*y)) for x, y in verts]
           for name, verts in sorted(polygons.items())}
    xmax = max([x for vs in pts.values() for x, _ in vs] + [Fraction(1)])
    ymax = max([y for vs in pts.values() for _, y in vs] + [Fraction(1)])
    width, height, margin = 480, 360, 40

    def sx(x):
        return margin + float(x / xmax) * (width - 2 * margin)

    def sy(y):
        return height - margin - float(y / ymax) * (height - 2 * margin)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{margin}" y2="{margin}" stroke="black"/>',
    ]
    if title:
        lines.append(f'<text x="{margin}" y="20" font-size="14">{title}</text>')
    for i, (name, vs) in enumerate(pts.items()):
        color = colors[i % len(colors)]
        coords = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in vs)
        lines.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
        for x, y in vs:
            lines.append(f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="3" fill="{color}"/>')
        lines.append(f'<text x="{width - margin - 60}" y="{margin + 16 * i}" font-size="12" '
                     f'fill="{color}">{name}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- inputs ----------------------------------------------------------------------------

def polynomial(cfg):
    if cfg.raw is not None:
        f = cfg.raw
        if cfg.p is not None and cfg.p != f.p:
            f = LaurentPolynomial.from_terms(f.n, f.terms, cfg.p, f.a)
        return f
    if cfg.p is None:
        raise ValueError("--p is required")
    return families.build(cfg.spec, cfg.p, cfg.a)


def support(cfg):
    if cfg.spec is not None:
        return families.support_of(cfg.spec), cfg.spec.n
    return cfg.raw.support, cfg.raw.n


# -- commands --------------------------------------------------------------------------

def cmd_hodge(cfg):
    pts, n = support(cfg)
    poly = hull_facets(pts, n)
    D = poly.denominator
    k_max = cfg.k_max if cfg.k_max is not None else n * D + 2 * D
    enumerated = closed = None
    if cfg.method != "enum" and cfg.spec is not None:
        try:
            closed = families.closed_form_weights(cfg.spec, n * D,
                                                  corrected=cfg.method == "corrected")
        except (UnsupportedParameters, OutsideValidityDomain):
            if cfg.method != "auto":
                raise
    if cfg.method in ("closed", "corrected") and closed is None:
        raise UnsupportedParameters("closed forms need a family spec")
    if cfg.verify or closed is None:
        enumerated = hodge.weight_numbers(poly, max(k_max, n * D))
    if cfg.verify and closed is not None:
        bad = [k for k in range(n * D + 1) if closed[k] != enumerated[k]]
        if bad:
            raise Mismatch(f"closed form and enumerator disagree at k = {bad}")
    W = closed if closed is not None else enumerated
    H = hodge.hodge_numbers(W, n)
    hp = hodge.hodge_polygon(H)
    volume = normalized_volume(poly)
    if H.total != volume:
        raise Mismatch(f"sum of Hodge numbers {H.total} != normalized volume {volume}")
    result = {
        "D": D,
        "n": n,
        "source": "closed-form" if closed is not None else "enumerator",
        "verified": bool(cfg.verify and closed is not None),
        "volume": volume,
        "rows": [[k, W[k], H[k]] for k in range(n * D + 1)],
        "polygon": polygon_json(hp),
    }
    if cfg.fmt == "csv":
        return to_csv(["k", "W", "H"], result["rows"]), EXIT_OK
    if cfg.fmt == "svg":
        return render_svg({"HP": result["polygon"]["vertices"]}, "Hodge polygon"), EXIT_OK
    return dumps(result), EXIT_OK


def _np_result(cfg, f, modulus_rank=None):
    return zeta.newton_polygon(
        f, threads=cfg.threads, budget=cfg.budget,
        modulus_rank=cfg.modulus_rank if modulus_rank is None else modulus_rank)


def cmd_np(cfg):
    f = polynomial(cfg)
    res = _np_result(cfg, f)
    data = res.to_json()
    if cfg.fmt == "svg":
        return render_svg({"NP": data["vertices"]}, "Newton polygon"), EXIT_OK
    if cfg.fmt == "csv":
        rows = [[i, "inf" if v is None else f"{v[0]}/{v[1]}"] for i, v in data["valuations"]]
        return to_csv(["i", "ord_q"], rows), EXIT_OK
    return dumps(data), EXIT_OK


def cmd_compare(cfg):
    f = polynomial(cfg)
    expected = None
    if cfg.spec is not None:
        expected = families.ordinarity_expectation(cfg.spec, cfg.p)
    res = _np_result(cfg, f)
    poly = hull_facets(f.support, f.n)
    H = hodge.hodge_numbers(hodge.weight_numbers(poly), f.n)
    hp = hodge.hodge_polygon(H)
    verdict = zeta.compare_polygons(res.polygon, hp)
    matches = verdict != Verdict.CROSSING
    if expected is not None:
        want = Verdict.EQUAL if expected == families.Expected.NP_EQUALS_HP else Verdict.STRICTLY_ABOVE
        matches = verdict == want
    data = {
        "NP": polygon_json(res.polygon),
        "HP": polygon_json(hp),
        "endpoints_match": True,
        "observed": verdict.value,
        "expected": expected.value if expected is not None else None,
        "matches": matches,
    }
    code = EXIT_OK if matches else EXIT_MISMATCH
    if cfg.fmt == "svg":
        return render_svg({"NP": data["NP"]["vertices"], "HP": data["HP"]["vertices"]},
                          f"{verdict.value}"), code
    if cfg.fmt == "csv":
        return to_csv(["observed", "expected", "matches"],
                      [[data["observed"], data["expected"], matches]]), code
    return dumps(data), code


def cmd_diag(cfg, matrix=None):
    if matrix is None:
        if cfg.spec is None or cfg.spec.kind != "D":
            raise ValueError("diag needs a diagonal spec (--kind D) or --matrix")
        matrix = diagonal.diagonal_matrix(families.support_of(cfg.spec))
    factors = diagonal.invariant_factors(matrix)
    data = {"invariant_factors": factors, "D*": factors[-1], "matrix": matrix}
    if cfg.p is not None:
        data["p"] = cfg.p
        data["slopes"] = [[rat(s), n] for s, n in diagonal.orbit_slopes(matrix, cfg.p)]
    if cfg.fmt == "csv":
        rows = [[f"{s[0]}/{s[1]}", n] for s, n in data.get("slopes", [])]
        return to_csv(["slope", "length"], rows), EXIT_OK
    return dumps(data), EXIT_OK


def cmd_nondeg(cfg):
    f = polynomial(cfg)
    w = families.nondegeneracy_falsifier(f, cfg.r_max, cfg.threads, modulus_rank=cfg.modulus_rank)
    data = {"p": f.p, "a": f.a, "r_max": cfg.r_max, "witness": None}
    if w:
        data["witness"] = {"r": w.r, "face": [list(v) for v in w.face], "point": list(w.point)}
    code = EXIT_OK
    if cfg.spec is not None:
        criterion = families.nondegenerate_criterion(cfg.spec, f.p)
        data["criterion_nondegenerate"] = criterion
        # a witness refutes the criterion; no witness is consistent with it
        if criterion == bool(w):
            code = EXIT_MISMATCH
    return dumps(data), code


def cmd_tables(cfg, tables_arg=None, ms=None, pairs=None, k3_ms=None):
    from . import tables

    ids = tables_arg or list(tables.GOLDEN)
    kwargs = {}
    if ms:
        kwargs["ms"] = ms
    if pairs:
        kwargs["pairs"] = pairs
    if k3_ms:
        kwargs["k3_ms"] = k3_ms
    rows = []
    for t in ids:
        rows += tables.build_table(t, **kwargs)
    code = EXIT_OK if all(r.ok for r in rows) else EXIT_MISMATCH
    header = ["table", "family", "k", "quantity", "computed", "expected", "printed", "ok"]
    body = [[r.table, r.family, r.k, r.quantity, r.computed, r.expected, r.printed, r.ok]
            for r in rows]
    if cfg.fmt == "json":
        return dumps([dict(zip(header, row)) for row in body]), code
    return to_csv(header, body), code


# -- argument parsing ---------------------------------------------------------------

def _ints(text):
    return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]


def _pairs(text):
    out = []
    for chunk in text.split(";"):
        if chunk.strip():
            a, b = _ints(chunk)
            out.append((a, b))
    return out


def _matrix(text):
    return [_ints(row) for row in text.split(";")]


def build_parser():
    ap = argparse.ArgumentParser(prog="newtonhodge",
                                 description="Hodge and Newton polygons of Laurent polynomial families.")
    ap.add_argument("command", choices=["hodge", "np", "compare", "diag", "nondeg", "tables"])
    ap.add_argument("--kind", choices=["D", "G", "K"], help="family: diagonal, reflection, Kloosterman")
    ap.add_argument("--n", type=int)
    ap.add_argument("--m", type=_ints, help="comma-separated exponents m_1,...,m_n")
    ap.add_argument("--j", type=int, default=0)
    ap.add_argument("--spec", help="family spec JSON file")
    ap.add_argument("--raw", help="polynomial JSON file")
    ap.add_argument("--matrix", type=_matrix, help="diag: rows separated by ';'")
    ap.add_argument("--p", type=int)
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--kmax", type=int)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--budget", type=int, default=zeta.DEFAULT_EVAL_BUDGET)
    ap.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    ap.add_argument("--out")
    ap.add_argument("--verify", action="store_true", help="hodge: check closed form against enumerator")
    ap.add_argument("--method", choices=["auto", "closed", "corrected", "enum"], default="auto",
                    help="hodge: closed forms, enumerator, or closed forms where valid (auto)")
    ap.add_argument("--rmax", type=int, default=2)
    ap.add_argument("--modulus-rank", type=int, default=0,
                    help="use the r-th irreducible modulus for every field")
    ap.add_argument("--table", action="append", help="tables: id or name (repeatable)")
    ap.add_argument("--ms", type=_ints, help="tables: equilateral exponents")
    ap.add_argument("--pairs", type=_pairs, help="tables: coprime pairs like '2,3;3,5'")
    ap.add_argument("--k3-ms", type=_ints, help="tables: exponents for the n = 3 difference table")
    return ap


def config_from_args(args):
    spec = raw = None
    p, a = args.p, args.a
    if args.spec:
        with open(args.spec) as fh:
            data = json.load(fh)
        spec = families.FamilySpec.from_json(data)
        p = p if p is not None else data.get("p")
        a = int(data.get("a", a))
    elif args.kind:
        n = args.n if args.n is not None else len(args.m or [])
        spec = families.FamilySpec(args.kind, n, tuple(args.m or ()), args.j)
    if args.raw:
        with open(args.raw) as fh:
            raw = LaurentPolynomial.from_json(json.load(fh))
    if args.command in ("hodge", "np", "compare", "nondeg") and spec is None and raw is None:
        raise ValueError(f"{args.command} needs --kind/--n/--m, --spec or --raw")
    return RunConfig(args.command, spec, raw, p, a, args.kmax, args.threads, args.budget,
                     args.fmt, args.out, args.verify, args.rmax, args.modulus_rank, args.method)


def run(argv=None):
    """Parse, execute and return (output text, exit code)."""
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    return execute(cfg, args)


def execute(cfg, args):
    if cfg.command == "hodge":
        return cmd_hodge(cfg)
    if cfg.command == "np":
        return cmd_np(cfg)
    if cfg.command == "compare":
        return cmd_compare(cfg)
    if cfg.command == "diag":
        return cmd_diag(cfg, args.matrix)
    if cfg.command == "nondeg":
        return cmd_nondeg(cfg)
    return cmd_tables(cfg, args.table, args.ms, args.pairs, args.k3_ms)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        text, code = execute(cfg, args)
    except (Mismatch, PolynomialityViolation, EndpointMismatch, InexactDivision) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except NewtonHodgeError as exc:
        extra = f" (estimated work {exc.required})" if getattr(exc, "required", None) else ""
        print(f"error: {type(exc).__name__}: {exc}{extra}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    write(text, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
