import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from curvecover import bounds as b
from curvecover.errors import HypothesisNotMet, NotPrimePower, TooFewEntries


def test_classical_examples():
    assert b.classical_bounds(2, 0)["weil_upper"].value == 3
    s = b.classical_bounds(3, 1)["serre_interval"]
    assert (s.extra["lower"], s.extra["upper"]) == (1, 7)
    assert b.classical_bounds(9)["dv_slope"].value == 2
    with pytest.raises(NotPrimePower):
        b.classical_bounds(6, 1)


def test_weil_upper_interval_contains_float():
    w = b.classical_bounds(3, 1)["weil_upper"].value
    assert abs(float(w.lo) - (2 * math.sqrt(3) + 4)) < 1e-12


def test_lemma21_examples():
    r = b.lemma21(2, 0, 4, "i")
    assert r.value == 1 and b.lemma21_holds(r, 3)
    r = b.lemma21(2, 900, 31, "iv", 1)
    assert r.extra["hypothesis"] and r.extra["threshold"] == 30 and r.value == 1
    assert not b.lemma21(2, 900, 29, "iv", 1).extra["hypothesis"]
    assert not b.lemma21(2, 3, 5, "iii").extra["hypothesis"]
    with pytest.raises(HypothesisNotMet):
        b.lemma21(2, 900, 31, "iv")


def test_sequence_stats_examples():
    s = b.sequence_stats([(2, 5, 1), (2, 5, 1)])
    assert s.gamma == Fraction(5, 2) and s.beta == 1
    ladder = [(1 + 3**n, 10 * 3**n, 0) for n in range(1, 6)]
    assert b.sequence_stats(ladder).beta > Fraction(1, 3)
    tower = [(3**n, 3**n, 0) for n in range(1, 6)]
    assert b.sequence_stats(tower).beta == Fraction(1, 3)
    with pytest.raises(TooFewEntries):
        b.sequence_stats([(2, 5, 1)])


def test_sequence_stats_modular_entries():
    p, ells = 5, [13, 37, 61, 73, 97, 109, 157, 181]
    entries = []
    for ell in ells:
        g, ss = b.modular_formulas(ell, p)
        if g.value > 0:
            entries.append((int(g.value), math.ceil(ss.value), 0))
    gammas = b.sequence_stats(entries).prefixes["gamma"]
    assert all(x >= 0 for x in gammas)
    assert gammas[-1] <= 4


@given(st.lists(st.tuples(st.integers(1, 50), st.integers(0, 200), st.integers(0, 10)),
                min_size=2, max_size=8), st.tuples(st.integers(1, 50), st.integers(0, 200),
                                                   st.integers(0, 10)))
def test_prefix_statistics_monotone(entries, extra):
    s1 = b.sequence_stats(entries)
    s2 = b.sequence_stats(entries + [extra])
    assert s2.gamma <= s1.gamma and s2.beta <= s1.beta and s2.r2_sup >= s1.r2_sup
    assert min(s1.gamma, s1.beta, s1.r2_sup) >= 0


def test_formula_examples():
    assert b.thm_bounds("thm12", q=4).value == Fraction(2, 5)
    assert b.thm_bounds("bounding_data", gamma=1, H=4, M=1).value == Fraction(1, 4)
    assert b.thm_bounds("liminf_quarter", gamma=2).value == Fraction(1, 2)
    assert b.thm_bounds("cft_gamma", S=4, g=3, ell=2).value == 1
    h = b.thm_bounds("H_C", q=4, R2=1).value
    assert h == Fraction(5, 2)
    r = b.thm_bounds("cor62", q=9)
    half = r.extra["one_plus_half_m"]
    assert b.certify_gt(half, Fraction(16309, 10000)) and b.certify_gt(Fraction(1631, 1000), half)
    assert b.certify_gt(r.value, Fraction(1226, 1000))
    with pytest.raises(HypothesisNotMet):
        b.thm_bounds("thm12", q=8)
    with pytest.raises(HypothesisNotMet):
        b.thm_bounds("cor62", q=16)


def test_thm12_odd_square():
    # q = 9: (3 - 1)/(2 + ln 4/ln 9)
    v = b.thm_bounds("thm12", q=9).value
    f = 2 / (2 + math.log(4) / math.log(9))
    assert abs(float(v.lo) - f) < 1e-12


def gs_ref(ell, q, r, s):
    lhs = Fraction((r - 2) ** 2, 4)
    return lhs >= (1 + s if (q - 1) % ell == 0 else s)


def test_golod_shafarevich_examples():
    assert b.golod_shafarevich(2, 5, 5, 1).value is True
    assert b.golod_shafarevich(2, 5, 5, 2).value is False
    assert b.golod_shafarevich(2, 4, 5, 2).value is True


@given(st.sampled_from([2, 3, 5, 7]), st.sampled_from([3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]),
       st.integers(2, 12), st.integers(1, 40))
def test_golod_shafarevich_against_reference(ell, q, r, s):
    assert b.golod_shafarevich(ell, q, r, s).value == gs_ref(ell, q, r, s)


def test_modular_examples():
    assert b.modular_formulas(13, 5)[0].value == 0
    assert b.modular_formulas(37, 5)[0].value == 2
    g, ss = b.modular_formulas(11, 5)
    assert (g.value, ss.value) == (1, 4)
    with pytest.raises(HypothesisNotMet):
        b.modular_formulas(5, 5)


def test_serre_examples():
    r = b.serre_tower_params(3**7).extra
    assert (r["r"], r["S"], r["feasible"]) == (4, 0, False)
    r = b.serre_tower_params(3**38).extra
    assert (r["r"], r["g"], r["S"], r["gamma"]) == (20, 10, 80, Fraction(40, 9))
    for e in range(1, 60):
        r = b.serre_tower_params(3**e).extra
        assert r["r"] % 2 == 0 and r["g"] * 2 == r["r"]


def test_crossovers():
    assert b.crossover(0) == 211
    assert b.crossover(1) == 419
    assert all(b.cor62_improves(q)[0] for q in b.odd_prime_powers(3, 207))
    assert all(b.cor62_improves(q)[1] for q in b.odd_prime_powers(3, 417))


def test_table_examples_and_monotonicity():
    rows = b.nq_lower_table(2, 8)
    assert rows[0].lower_bound == 3 and rows[0].source == "exact"
    better = b.nq_lower_table(3, 12, exact={1: 7})
    assert better[1].lower_bound == 7 and better[4].lower_bound == 7
    base = b.nq_lower_table(3, 12, exact={1: 6})
    assert all(x.lower_bound >= y.lower_bound for x, y in zip(better, base))
    for r in better:
        if r.g >= 4:
            assert r.lower_bound >= better[r.g // 4].lower_bound
    csv_text = b.table_csv(better)
    assert csv_text.splitlines()[0] == "q,g,lower_bound,source,citation"


def test_interval_certification():
    assert b.certify_gt(b.sqrt_q(2), Fraction(141421, 100000))
    assert not b.certify_gt(Fraction(1), Fraction(1))
    assert b.certify_ge(Fraction(1), Fraction(1))
