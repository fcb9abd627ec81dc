"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""
import json
import time
from fractions import Fraction
from pathlib import Path

import pytest

from curvecover import bounds, covers, oracle
from curvecover.corpus import EQUALITY_CURVE, corpus
from curvecover.curves import count_points, parse_curve, place_count_nd, projective_line, render_curve
from curvecover.errors import DomainError
from curvecover.gf import make_field

GOLDEN = Path(__file__).resolve().parents[1] / "oracle_golden.json"


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {n}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def _label(C):
    return "P1" if C.is_pline else render_curve(C)


def test_1_mobius_orbit_equivalence(report):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for C in corpus():
        for d in range(1, 7):
            if C.q**d > 10**6:
                continue
            checked += 1
            if place_count_nd(C, d) != oracle.brute_places(C, d):
                bad.append((_label(C), d))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 60 and len(corpus()) == 24,
           f"{checked} (curve, d) pairs, mismatches={bad}, {dt:.1f}s")


def test_2_lemma21_suite(report):
    t0 = time.perf_counter()
    ok_i = all(bounds.lemma21_holds(bounds.lemma21(C.q, C.genus, d, "i"), place_count_nd(C, d))
               for C in corpus() for d in range(1, 7) if C.q**d <= 10**6)
    equal = [(_label(C), d) for C in corpus() if C.q % 2 and C.genus >= 1
             for d in range(2 * C.genus + 1, 2 * C.genus + 4)
             if place_count_nd(C, d) == 2 ** (2 * C.genus)]
    above = all(place_count_nd(C, d) >= 2 ** (2 * C.genus) for C in corpus()
                if C.q % 2 and C.genus >= 1 for d in range(2 * C.genus + 1, 2 * C.genus + 4))
    six = parse_curve(EQUALITY_CURVE)
    ok_iii = (above and equal == [(EQUALITY_CURVE, 3)] and count_points(six, 1) == 6
              and place_count_nd(six, 3) == 4 and bounds.lemma21(3, 1, 3, "iii").value == 4)
    iv = bounds.lemma21(2, 900, 31, "iv", 1)
    ok_iv = iv.extra["hypothesis"] and iv.extra["threshold"] == 30 and iv.value == 1
    dt = time.perf_counter() - t0
    report(2, ok_i and ok_iii and ok_iv and dt < 10,
           f"(i)={ok_i} (iii)={ok_iii} equality={equal} (iv)={ok_iv}, {dt:.1f}s")


def _criterion3_covers():
    out = []
    for C in corpus():
        g = C.genus
        for h in range(4 * g, 4 * g + 7):
            out.append((C, h, covers.build_cover(C, h)))
    return out


@pytest.fixture(scope="module")
def built():
    t0 = time.perf_counter()
    items = _criterion3_covers()
    return items, time.perf_counter() - t0


def test_3_constructive_coverage(report, built):
    items, dt = built
    t0 = time.perf_counter()
    wrong = [(_label(C), h) for C, h, B in items if covers.hurwitz_genus(B) != h]
    lpoly = 0
    for C, h, B in items:
        if h <= 4 and C.q <= 4:
            L = covers.cover_l_polynomial(B)
            lpoly += 1
            if len(L.coeffs) - 1 != 2 * h:
                wrong.append((_label(C), h, "lpoly"))
    dt += time.perf_counter() - t0
    report(3, not wrong and dt < 300,
           f"{len(items)} covers, {lpoly} L-polynomial checks, wrong={wrong}, {dt:.1f}s")


def test_4_twist_guarantee(report, built):
    items, _ = built
    short, sums = [], []
    for C, h, B in items:
        c = count_points(C, 1)
        if covers.cover_count_points(covers.select_twist(B), 1) < c:
            short.append((_label(C), h))
        if covers.cover_count_points(B, 1) + covers.cover_count_points(covers.twist(B), 1) != 2 * c:
            sums.append((_label(C), h))
    report(4, not short and not sums,
           f"{len(items)} covers, below #C={short}, twist-sum failures={sums}")


def test_5_numeric_anchors(report):
    t0 = time.perf_counter()
    thm = bounds.thm_bounds("thm12", q=4).value == Fraction(2, 5)
    c = bounds.thm_bounds("cor62", q=9).value
    cor = bool(bounds.certify_gt(c, Fraction(1226, 1000)) and bounds.certify_gt(Fraction(1227, 1000), c))
    below = all(bounds.cor62_improves(q)[0] for q in bounds.odd_prime_powers(3, 207))
    first = next(bounds.odd_prime_powers(207, 1000))
    cross = below and not bounds.cor62_improves(first)[0] and bounds.crossover(0) == first
    mod = (bounds.modular_formulas(13, 5)[0].value == 0 and bounds.modular_formulas(37, 5)[0].value == 2
           and bounds.modular_formulas(11, 5)[1].value == 4)
    dt = time.perf_counter() - t0
    report(5, thm and cor and cross and mod and dt < 5,
           f"thm12={thm} cor62={cor} crossover(first={first})={cross} modular={mod}, {dt:.1f}s")


def test_6_golod_shafarevich(report):
    bad = []
    for q, ell in ((5, 2), (4, 2)):  # ell | q - 1, and ell not dividing q - 1
        for r in range(2, 13):
            for s in range(1, 41):
                lhs = Fraction((r - 2) ** 2, 4)
                ref = lhs >= (1 + s if (q - 1) % ell == 0 else s)
                if bounds.golod_shafarevich(ell, q, r, s).value != ref:
                    bad.append((q, r, s))
    app = bounds.golod_shafarevich(2, 5, 5, 2)
    flagged = app.value is False and app.extra["lhs"] == Fraction(9, 4) and app.extra["rhs"] == 3
    report(6, not bad and flagged,
           f"mismatches={bad}; six-polynomial configuration unsatisfied "
           f"(9/4 < 3), kept as an open question: {flagged}")


def test_7_composite_covers(report):
    t0 = time.perf_counter()
    base = parse_curve(EQUALITY_CURVE)
    notes, ok = [], True
    for n in (2, 3, 6):
        B = covers.build_nrank_cover(base, n)
        g = covers.hurwitz_genus(B)
        ok &= g < 7 * n * base.genus
        note = f"n={n}: g(B)={g}"
        if g <= 5:
            need, order = covers.nrank_divisibility(B)
            ok &= order % need == 0
            note += f", {need} | L_B(1)={order}"
        notes.append(note)
    dt = time.perf_counter() - t0
    report(7, ok and dt < 120, "; ".join(notes) + f", {dt:.1f}s")


@pytest.mark.xfail(strict=True, reason="no pair of degree-2 places splits every rational "
                   "place over F_3 or F_5; see the exhaustive check in test_covers")
def test_8_splitting_cover(report):
    notes, ok = [], True
    for p in (3, 5):
        C = projective_line(make_field(p))
        try:
            B = covers.build_splitting_cover(C, 1)  # d = h - 2g + 1 = 2
            n = covers.cover_count_points(B, 1)
            ok &= n == 2 * (p + 1)
            notes.append(f"q={p}: #B={n}")
        except DomainError as exc:
            ok = False
            notes.append(f"q={p}: {exc.code}")
    report(8, ok, "; ".join(notes))


def test_9_golden_stability(report):
    t0 = time.perf_counter()
    text = oracle.golden()
    same = text == GOLDEN.read_text()
    entries = json.loads(text)["entries"]
    cells = sorted((e["q"], e["g"]) for e in entries)
    sandwich = all(e["nq"] <= e["refined_weil_upper"] and e["within_bounds"] for e in entries)
    want = sorted((q, g) for q in (2, 3, 4, 5) for g in (0, 1, 2))
    dt = time.perf_counter() - t0
    report(9, same and sandwich and cells == want,
           f"byte-identical={same} sandwich={sandwich} cells={len(cells)}, {dt:.1f}s")
