from itertools import product

import pytest
from hypothesis import given, strategies as st

from curvecover import poly as P
from curvecover.gf import make_field


def polys(F, maxdeg=6):
    return st.lists(st.integers(0, F.q - 1), max_size=maxdeg + 1).map(P.trim)


FIELDS = [make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(3, 2)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_irreducible_counts_match_necklace_formula(F):
    for d in range(1, 5 if F.q <= 4 else 4):
        got = list(P.irreducibles(F, d))
        assert len(got) == P.count_irreducibles(F.q, d)
        assert got == sorted(got, key=P.key)


def test_irreducibles_agree_with_root_free_quadratics():
    F = make_field(5)
    quad = [u for u in P.monics(F, 2) if not P.roots(F, u)]
    assert quad == list(P.irreducibles(F, 2))


@given(st.sampled_from(FIELDS), st.data())
def test_divmod_identity(F, data):
    a = data.draw(polys(F))
    b = data.draw(polys(F, 4).filter(bool))
    qt, r = P.divmod_(F, a, b)
    assert P.add(F, P.mul(F, qt, b), r) == a
    assert P.deg(r) < P.deg(b)


@given(st.sampled_from(FIELDS), st.data())
def test_xgcd_bezout(F, data):
    a, b = data.draw(polys(F)), data.draw(polys(F))
    g, s, t = P.xgcd(F, a, b)
    assert P.add(F, P.mul(F, s, a), P.mul(F, t, b)) == g
    if g:
        assert g[-1] == 1
        assert not P.mod(F, a, g) and not P.mod(F, b, g)


@given(st.sampled_from(FIELDS), st.data())
def test_factorization_reassembles(F, data):
    a = data.draw(polys(F, 7).filter(lambda u: P.deg(u) >= 1))
    lc, facs = P.factor(F, a)
    prod = [lc]
    for h, m in facs:
        assert P.is_irreducible(F, h) and h[-1] == 1
        prod = P.mul(F, prod, P.power(F, h, m))
    assert prod == a


@given(st.sampled_from(FIELDS), st.data())
def test_roots_are_roots(F, data):
    a = data.draw(polys(F).filter(bool))
    rs = P.roots(F, a)
    assert rs == [x for x in range(F.q) if P.evaluate(F, a, x) == 0]


def test_derivative_in_char_p():
    F = make_field(3)
    assert P.derivative(F, [0, 0, 0, 1]) == []
    assert P.derivative(F, [1, 1, 1]) == [1, 2]


def test_nullspace_kernel():
    F = make_field(5)
    rows = [[1, 2, 3, 4], [0, 1, 1, 1]]
    for v in P.nullspace(F, rows, 4):
        assert all(sum(F.mul(r[i], v[i]) for i in range(4)) % 5 == 0 for r in rows)
    assert len(P.nullspace(F, rows, 4)) == 2


def test_crt_pair():
    F = make_field(3)
    m1, m2 = [1, 0, 1], [2, 1]
    x = P.crt_pair(F, [1, 1], m1, [2], m2)
    assert P.mod(F, x, m1) == [1, 1]
    assert P.mod(F, x, m2) == [2]


def test_enumeration_orders():
    F = make_field(2)
    assert list(P.monics(F, 1)) == [[0, 1], [1, 1]]
    assert list(P.polys_upto(F, 1)) == [[], [1], [0, 1], [1, 1]]
    assert all(len(u) == 3 for u in P.monics(F, 2))
    assert sum(1 for _ in product(range(3), repeat=2)) == len(list(P.monics(make_field(3), 2)))
