"""Batch command line front-end.

Every command prints one document (JSON by default) and exits 0; domain
errors print ``{"error": code, "detail": ...}`` and exit 2, unparsable
input exits 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, covers, oracle
from .curves import curve_info, count_points, find_place, parse_curve, place_count_nd, weil_verify
from .errors import DomainError, ParseError
from .jacobian import group_structure, n_rank


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# -- command bodies ------------------------------------------------------------

def cmd_curve_info(a):
    C = parse_curve(a.spec)
    out = curve_info(C)
    out["weil"] = weil_verify(C)
    return out


def cmd_curve_count(a):
    return {"m": a.m, "count": count_points(parse_curve(a.spec), a.m)}


def cmd_curve_places(a):
    C = parse_curve(a.spec)
    out = {"n_d": place_count_nd(C, a.d)}
    if a.find:
        out["place"] = find_place(C, a.d, generic_only=a.generic).render()
    return out


def cmd_jac_structure(a):
    C = parse_curve(a.spec)
    S = group_structure(C)
    out = {"order": S.order, "invariant_factors": S.invariant_factors,
           "generators": [D.render() for D in S.generators]}
    if a.n:
        out["n_rank"] = n_rank(C, a.n)
    return out


def _cover_out(B, counts=True):
    out = {"cover": covers.cover_to_dict(B), "hurwitz_genus": covers.hurwitz_genus(B)}
    if counts:
        out["points"] = covers.cover_count_points(B, 1)
        out["base_points"] = count_points(B.base, 1)
    return out


def cmd_cover_build(a):
    C = parse_curve(a.spec)
    if a.force_place:
        B = covers.build_as_cover(C, a.h, force_place=True)
    else:
        B = covers.build_cover(C, a.h)
    out = _cover_out(B)
    if a.lpoly:
        L = covers.cover_l_polynomial(B)
        out["l_polynomial"] = list(L.coeffs)
    return out


def cmd_cover_twist(a):
    B = covers.build_cover(parse_curve(a.spec), a.h)
    S = covers.select_twist(B)
    out = _cover_out(S)
    out["twisted"] = S is not B
    out["untwisted_points"] = covers.cover_count_points(B, 1)
    return out


def cmd_cover_split(a):
    B = covers.build_splitting_cover(parse_curve(a.spec), a.h)
    return _cover_out(B)


def cmd_cover_nrank(a):
    B = covers.build_nrank_cover(parse_curve(a.spec), a.n)
    out = _cover_out(B, counts=False)
    out["bound_7ng"] = 7 * a.n * B.base.genus
    if a.divisibility:
        need, order = covers.nrank_divisibility(B)
        out.update({"required_divisor": need, "jacobian_order": order,
                    "divides": order % need == 0})
    return out


def cmd_cover_verify(a):
    data = json.loads(_read(a.input))
    B = covers.cover_from_dict(data.get("cover", data))
    return _cover_out(B)


def cmd_bounds_table(a):
    exact = {}
    if a.golden:
        for e in json.loads(_read(a.golden))["entries"]:
            if e["q"] == a.q:
                exact[e["g"]] = e["nq"]
    rows = bounds.nq_lower_table(a.q, a.gmax, exact=exact)
    return [{"q": r.q, "g": r.g, "lower_bound": r.lower_bound, "source": r.source,
             "citation": r.citation} for r in rows]


def cmd_bounds_gs(a):
    R = bounds.golod_shafarevich(a.ell, a.q, a.r, a.s)
    return R.to_dict()


def cmd_bounds_serre(a):
    return bounds.serre_tower_params(a.q).to_dict()


FORMULAS = ("classical", "lemma21", "liminf_quarter", "cft_gamma", "thm12", "H_C",
            "bounding_data", "cor62", "modular", "crossover")


def cmd_bounds_formula(a):
    w = a.which
    if w == "classical":
        return {k: r.to_dict() for k, r in bounds.classical_bounds(a.q, a.g).items()}
    if w == "lemma21":
        return bounds.lemma21(a.q, a.g, a.d, a.variant, a.j).to_dict()
    if w == "modular":
        g, ss = bounds.modular_formulas(a.ell, a.p)
        return {"genus": g.to_dict(), "supersingular": ss.to_dict()}
    if w == "crossover":
        return {"which": a.j or 0, "first_failure": bounds.crossover(a.j or 0, a.limit)}
    kw = {}
    for name in ("q", "g", "gamma", "S", "ell", "R2", "H", "M"):
        v = getattr(a, name, None)
        if v is not None:
            kw[name] = Fraction(v) if name in ("gamma", "R2", "H", "M") else int(v)
    try:
        R = bounds.thm_bounds(w, **kw)
    except KeyError as exc:
        raise ParseError(f"formula {w} needs --{exc.args[0]}") from exc
    out = R.to_dict()
    out["inputs"] = {k: bounds.render_value(v) for k, v in R.inputs.items()}
    if w == "cor62":
        out["certified_gt_1.226"] = bounds.certify_gt(R.value, Fraction(1226, 1000))
        out["certified_lt_1.227"] = bounds.certify_gt(Fraction(1227, 1000), R.value)
    return out


def cmd_oracle_nq(a):
    return oracle.brute_nq(a.q, a.g).to_dict()


def cmd_oracle_golden(a):
    text = oracle.golden(jobs=a.jobs)
    if a.check:
        old = _read(a.check)
        return {"path": a.check, "identical": old == text}
    if a.out:
        Path(a.out).write_text(text)
        return {"path": a.out, "entries": len(json.loads(text)["entries"])}
    return json.loads(text)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


# -- parser -------------------------------------------------------------------------

def build_parser():
    top = _Parser(prog="curvecover", description="Curves over finite fields, covers and bounds.")
    top.add_argument("--format", choices=("json", "csv", "text"), default="json")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, fn, help_):
        p = group.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    def spec(p):
        p.add_argument("--spec", required=True, help='e.g. "hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]"')

    g = groups.add_parser("curve", help="curve invariants").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "info", cmd_curve_info, "genus, L-polynomial, Weil checks")
    spec(p)
    p = sub(g, "count", cmd_curve_count, "#C(F_{q^m})")
    spec(p)
    p.add_argument("--m", type=int, default=1)
    p = sub(g, "places", cmd_curve_places, "number of degree-d places")
    spec(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--find", action="store_true", help="also print the canonical place")
    p.add_argument("--generic", action="store_true")

    g = groups.add_parser("jac", help="Jacobian").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "structure", cmd_jac_structure, "invariant factors of J(F_q)")
    spec(p)
    p.add_argument("--n", type=int)

    g = groups.add_parser("cover", help="cover constructions").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "build", cmd_cover_build, "degree-2 cover of genus h")
    spec(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--force-place", action="store_true")
    p.add_argument("--lpoly", action="store_true", help="L-polynomial from fiber counts")
    p = sub(g, "twist", cmd_cover_twist, "cover or twist with #B >= #C")
    spec(p)
    p.add_argument("--h", type=int, required=True)
    p = sub(g, "split", cmd_cover_split, "cover in which every rational place splits")
    spec(p)
    p.add_argument("--h", type=int, required=True)
    p = sub(g, "nrank", cmd_cover_nrank, "composite cover for n-rank growth")
    spec(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--divisibility", action="store_true")
    p = sub(g, "verify", cmd_cover_verify, "re-verify a cover JSON document")
    p.add_argument("--input", required=True)

    g = groups.add_parser("bounds", help="bounds on N_q(g) and A(q)").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "table", cmd_bounds_table, "lower-bound table for N_q(g)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gmax", type=int, default=12)
    p.add_argument("--golden", help="oracle golden file for exact rows")
    p = sub(g, "gs", cmd_bounds_gs, "Golod-Shafarevich criterion")
    for n in ("ell", "q", "r", "s"):
        p.add_argument(f"--{n}", type=int, required=True)
    p = sub(g, "serre", cmd_bounds_serre, "Serre tower parameters")
    p.add_argument("--q", type=int, required=True)
    p = sub(g, "formula", cmd_bounds_formula, "closed-form bounds")
    p.add_argument("--which", choices=FORMULAS, required=True)
    for n in ("q", "g", "d", "j", "ell", "p", "S"):
        p.add_argument(f"--{n}", type=int)
    for n in ("gamma", "R2", "H", "M"):
        p.add_argument(f"--{n}", type=str)
    p.add_argument("--variant", choices=("i", "ii", "iii", "iv"))
    p.add_argument("--limit", type=int, default=1000)

    g = groups.add_parser("oracle", help="brute-force ground truth").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "nq", cmd_oracle_nq, "exhaustive N_q(g), q <= 5, g <= 2")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p = sub(g, "golden", cmd_oracle_golden, "regenerate the golden N_q(g) table")
    p.add_argument("--out")
    p.add_argument("--check")
    p.add_argument("--jobs", type=int, default=1)
    return top


# -- output ---------------------------------------------------------------------------

def _flat(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flat(obj[k], f"{prefix}{k}.")
    else:
        yield prefix[:-1], json.dumps(obj) if isinstance(obj, (list, bool)) or obj is None else obj


def render(obj, fmt):
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    rows = obj if isinstance(obj, list) else None
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows and all(isinstance(r, dict) for r in rows):
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([r[k] for k in keys])
        else:
            w.writerow(["key", "value"])
            for k, v in _flat(obj):
                w.writerow([k, v])
        return buf.getvalue().rstrip("\n")
    if rows is not None:
        return "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) if isinstance(r, dict)
                         else str(r) for r in rows)
    return "\n".join(f"{k}: {v}" for k, v in _flat(obj))


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        result = args.fn(args)
    except ParseError as exc:
        print(json.dumps({"error": exc.code, "detail": exc.detail}, sort_keys=True), file=stdout)
        return 1
    except DomainError as exc:
        doc = {"error": exc.code, "detail": exc.detail}
        if exc.data:
            doc["data"] = {k: bounds.render_value(v) if isinstance(v, Fraction) else v
                           for k, v in exc.data.items()}
        print(json.dumps(doc, sort_keys=True, default=str), file=stdout)
        return 2
    print(render(result, fmt), file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
