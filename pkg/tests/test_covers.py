import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from curvecover import covers as K
from curvecover import poly as P
from curvecover.corpus import EQUALITY_CURVE
from curvecover.curves import count_points, parse_curve, projective_line
from curvecover.errors import (GenusTooSmall, InconsistentRamification, NoSplittingPair, ParseError,
                               UnsupportedShape)
from curvecover.gf import make_field
from curvecover.oracle import model_cover_count

P2, P3, P4, P5 = (projective_line(make_field(p, k)) for p, k in ((2, 1), (3, 1), (2, 2), (5, 1)))
C6 = parse_curve(EQUALITY_CURVE)


def test_as_examples():
    B = K.build_as_cover(P2, 1)
    assert B.defining.a == (0, 0, 0, 1) and K.hurwitz_genus(B) == 1
    assert K.cover_count_points(B, 1) == 3
    assert K.select_twist(B) is B
    B = K.build_as_cover(P2, 2)
    assert B.defining.a == (0, 0, 0, 0, 0, 1) and K.hurwitz_genus(B) == 2
    B = K.build_as_cover(P4, 3)
    assert B.meta["m"] == 7 and K.hurwitz_genus(B) == 3
    assert K.cover_l_polynomial(B).genus == 3
    with pytest.raises(GenusTooSmall):
        K.build_as_cover(parse_curve("hyperelliptic p=2 k=1 f=[0,0,1,1] h=[1]"), 3)


def test_kummer_examples():
    B = K.build_kummer_cover(P3, 1)
    f = B.defining
    assert (f.a, f.c) == ((1, 0, 1), (2, 1, 1))
    assert K.hurwitz_genus(B) == 1
    assert K.cover_count_points(B, 1) == model_cover_count(B, 1)
    B = K.build_kummer_cover(P5, 2)
    assert len(B.defining.a) == len(B.defining.c) == 4 and K.hurwitz_genus(B) == 2
    B = K.build_kummer_cover(C6, 4)
    assert B.meta["d"] == 3 and K.hurwitz_genus(B) == 4


def test_unramified_hurwitz_value():
    # double cover of a genus-g base with no ramification has genus 2g - 1
    C = C6
    B = K.make_cover(C, K.make_func(C.ctx, [0, 1]), 2, 1)  # div x = 2(0,0) - 2inf
    assert B.ramification == () and K.hurwitz_genus(B) == 1
    assert K.cover_l_polynomial(B).genus == 1
    assert K.cover_count_points(B, 1) + K.cover_count_points(K.twist(B), 1) == 12


def test_geometric_squares_are_rejected():
    F = C6.ctx
    for f in ([2], [0, 0, 1], [0, 2, 1, 1]):
        with pytest.raises(UnsupportedShape):
            K.make_cover(C6, K.make_func(F, f), 2, 1)
    with pytest.raises(UnsupportedShape):
        K.make_cover(C6, K.make_func(F, [1, 2, 1, 1], [2]), 2, 1)  # (1 + y)^2


def test_genus_mismatch_is_reported():
    d = K.cover_to_dict(K.build_kummer_cover(P3, 1))
    d["genus"] = 2
    with pytest.raises(InconsistentRamification):
        K.cover_from_dict(d)
    with pytest.raises(ParseError):
        K.cover_from_dict({"base": "pline p=3 k=1"})


def _bases(corpus):
    return [C for C in corpus if C.genus <= 1]


def _covers(corpus):
    out = []
    for C in _bases(corpus):
        for h in range(4 * C.genus, 4 * C.genus + 3):
            if h >= 1:
                out.append(K.build_cover(C, h))
    return out


@pytest.fixture(scope="module")
def built(corpus_curves):
    return _covers(corpus_curves)


def test_divisor_of_has_degree_zero(built):
    for B in built:
        dv = K.divisor_of(B.base, B.defining)
        assert sum(pl.degree * v for pl, v in dv) == 0


def test_divisor_is_additive():
    C = C6
    F = C.ctx
    f1 = K.make_func(F, [1, 1], [1])
    f2 = K.make_func(F, [0, 1], [], [2, 0, 1])
    prod = K.func_mul(C, f1, f2)
    tally = {}
    for f in (f1, f2):
        for pl, v in K.divisor_of(C, f):
            tally[pl.sort_key()] = tally.get(pl.sort_key(), 0) + v
    direct = {pl.sort_key(): v for pl, v in K.divisor_of(C, prod)}
    assert {k: v for k, v in tally.items() if v} == direct


def test_kummer_odd_support(built):
    for B in built:
        if B.kind == "kummer":
            odd = [(pl, v) for pl, v in K.divisor_of(B.base, B.defining) if v % 2]
            assert len(odd) == 2
            assert {pl.degree for pl, _ in odd} == {B.meta["d"]}


def test_select_twist_guarantee(built):
    for B in built:
        S = K.select_twist(B)
        c = count_points(B.base, 1)
        assert K.cover_count_points(S, 1) >= c
        T = K.twist(B)
        for m in (1, 3):
            if B.base.q**m <= 20000:
                assert K.cover_count_points(B, m) + K.cover_count_points(T, m) == 2 * count_points(B.base, m)


def test_fiber_counts_match_explicit_models(built):
    checked = 0
    for B in built:
        if B.r == 2 and not B.base.is_pline:
            continue
        if B.r == 1 and B.defining.c != (1,):
            continue
        for m in (1, 2):
            if B.base.q**m <= 4096:
                assert K.cover_count_points(B, m) == model_cover_count(B, m)
                checked += 1
    assert checked >= 10


def test_json_roundtrip(built):
    for B in built:
        text = K.cover_to_json(B)
        again = K.cover_from_dict(json.loads(text))
        assert K.cover_to_json(again) == text
        assert K.hurwitz_genus(again) == B.expected_genus


def test_nrank_cover_example():
    B = K.build_nrank_cover(C6, 2)
    assert B.meta["d"] == 1 and B.r == 2 and B.pe == 1
    assert K.hurwitz_genus(B) < 14
    need, order = K.nrank_divisibility(B)
    assert order % need == 0


def test_nrank_pure_artin_schreier():
    B = K.build_nrank_cover(C6, 3)
    assert B.r == 1 and B.pe == 3 and B.kind == "artin_schreier"
    assert K.hurwitz_genus(B) < 21


def test_nrank_needs_positive_genus():
    with pytest.raises(GenusTooSmall):
        K.build_nrank_cover(P3, 2)


def test_splitting_cover_needs_d_above_one():
    with pytest.raises(GenusTooSmall):
        K.build_splitting_cover(P3, 0)


@pytest.mark.parametrize("C,h", [(P3, 3), (P5, 2)], ids=["F3-d4", "F5-d3"])
def test_splitting_cover_beyond_d2(C, h):
    B = K.build_splitting_cover(C, h)
    assert K.hurwitz_genus(B) == h
    assert all(n == 2 for pt, n in K.fibers(B, 1))
    assert K.cover_count_points(B, 1) == 2 * (C.q + 1)


def _brute_no_split_pair(q):
    """True when no two monic irreducible quadratics over F_q have a product
    that is a nonzero square at every rational point (infinity is automatic)."""
    sq = {x * x % q for x in range(1, q)}
    irr = [(b, c) for b in range(q) for c in range(q)
           if all((x * x + b * x + c) % q for x in range(q))]
    for (b1, c1), (b2, c2) in combinations(irr, 2):
        if all(((x * x + b1 * x + c1) * (x * x + b2 * x + c2)) % q in sq for x in range(q)):
            return False
    return True


@pytest.mark.parametrize("C", [P3, P5], ids=["F3", "F5"])
def test_no_quadratic_splitting_pair_exists(C):
    assert _brute_no_split_pair(C.q)
    with pytest.raises(NoSplittingPair):
        K.build_splitting_cover(C, 1)


@settings(max_examples=20)
@given(st.sampled_from([P3, P5]), st.data())
def test_kummer_twist_sum_random_functions(C, data):
    F = C.ctx
    u1 = data.draw(st.sampled_from(list(P.irreducibles(F, 2)) + list(P.irreducibles(F, 3))))
    u2 = data.draw(st.sampled_from(list(P.irreducibles(F, 1))))
    B = K.make_cover(C, K.make_func(F, u1, (), u2), 2, 1)
    T = K.twist(B)
    for m in (1, 3):
        assert K.cover_count_points(B, m) + K.cover_count_points(T, m) == 2 * (C.q**m + 1)
    assert K.cover_count_points(B, 1) == model_cover_count(B, 1)
