import json
from pathlib import Path

import pytest

from curvecover import oracle
from curvecover.corpus import EQUALITY_CURVE
from curvecover.curves import count_points, hyperelliptic, parse_curve, projective_line
from curvecover.errors import BudgetExceeded
from curvecover.gf import make_field

GOLDEN = Path(__file__).resolve().parents[1] / "oracle_golden.json"


def test_brute_places_examples():
    P1 = projective_line(make_field(2))
    assert oracle.brute_places(P1, 2) == 1
    assert oracle.brute_places(P1, 1) == 3
    assert oracle.brute_places(parse_curve(EQUALITY_CURVE), 3) == 4


def test_brute_jacobian_examples():
    assert oracle.brute_jacobian(projective_line(make_field(3))).order == 1
    assert oracle.brute_jacobian(hyperelliptic(3, 1, [0, 1, 0, 1])).invariant_factors == [4]
    assert oracle.brute_jacobian(parse_curve(EQUALITY_CURVE)).invariant_factors == [6]


def test_brute_nq_examples():
    assert oracle.brute_nq(2, 0).nq == 3
    assert oracle.brute_nq(2, 1).nq == 5
    assert oracle.brute_nq(3, 1).nq == 7
    with pytest.raises(BudgetExceeded):
        oracle.brute_nq(7, 1)
    with pytest.raises(BudgetExceeded):
        oracle.brute_nq(2, 3)


def _weighted_count(F, f, h, g):
    """Points of y^2 + h y = f in weighted projective space P(1, g+1, 1)."""
    f = list(f) + [0] * (2 * g + 3 - len(f))
    h = list(h) + [0] * (g + 2 - len(h))

    def ev(a, x):
        acc = 0
        for c in reversed(a):
            acc = F.add(F.mul(acc, x), c)
        return acc

    total = 0
    for x in range(F.q):
        fx, hx = ev(f, x), ev(h, x)
        total += sum(1 for y in range(F.q) if F.add(F.mul(y, y), F.mul(hx, y)) == fx)
    top_f, top_h = f[2 * g + 2], h[g + 1]
    total += sum(1 for y in range(F.q) if F.add(F.mul(y, y), F.mul(top_h, y)) == top_f)
    return total


def test_golden_witnesses_recount():
    for e in json.loads(GOLDEN.read_text())["entries"]:
        if e["g"] == 0:
            assert e["nq"] == e["q"] + 1
            continue
        p = {2: 2, 3: 3, 4: 2, 5: 5}[e["q"]]
        F = make_field(p, 1 if e["q"] == p else 2)
        enc = lambda c: F.from_digits(c) if isinstance(c, list) else c  # noqa: E731
        f = [enc(c) for c in e["witness"]["f"]]
        h = [enc(c) for c in e["witness"]["h"]]
        assert _weighted_count(F, f, h, e["g"]) == e["nq"]
        if e["witness"]["spec"]:
            assert count_points(parse_curve(e["witness"]["spec"]), 1) == e["nq"]


def test_golden_sandwich():
    for e in json.loads(GOLDEN.read_text())["entries"]:
        assert e["within_bounds"] and e["nq"] <= e["refined_weil_upper"]


def test_golden_subset_regenerates():
    text = oracle.golden(cells=[(2, 1), (3, 0)])
    entries = json.loads(text)["entries"]
    full = {(e["q"], e["g"]): e for e in json.loads(GOLDEN.read_text())["entries"]}
    assert [full[(e["q"], e["g"])] for e in entries] == entries


def test_model_cover_count_rejects_unsupported():
    from curvecover.covers import build_kummer_cover
    from curvecover.errors import UnsupportedShape

    B = build_kummer_cover(parse_curve(EQUALITY_CURVE), 4)
    with pytest.raises(UnsupportedShape):
        oracle.model_cover_count(B)
