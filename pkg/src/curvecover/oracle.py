"""Brute-force ground truth, kept algorithmically apart from the main path.

* place counts come from partitioning C(F_{q^d}) into Frobenius orbits
  (the main path uses Moebius inversion of L-polynomial counts);
* Jacobian structure comes from closing the subgroup spanned by scanned
  generators and reading off the relation lattice (the main path counts
  l-power torsion over a full enumeration);
* N_q(g) for g <= 2 is an exhaustive sweep over all models of the genus,
  including genus-2 models with no rational Weierstrass point;
* cover counts are taken on plane or space models, never via local
  expansions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from . import poly as P
from .config import DEFAULT
from .curves import base_change, render_curve, validate_and_genus
from .errors import BudgetExceeded, CountMismatch, UnsupportedShape
from .gf import make_field
from .jacobian import GroupStructure, MumfordDivisor, cantor_add, zero


# -- places by Frobenius orbits ----------------------------------------------------

def _ext_points(C, m, budget=DEFAULT):
    """Affine points over F_{q^m} via preimage tables of y -> y^2 (+ h y)."""
    if C.q**m > budget.field_size:
        raise BudgetExceeded(f"q^m = {C.q}^{m} exceeds enumeration budget")
    E, emb, fE, hE = base_change(C, m)
    if C.is_pline:
        return E, [(x, None) for x in range(E.q)]
    pre = {}
    for z in range(E.q):
        w = E.add(E.mul(z, z), z) if E.char2 else E.mul(z, z)
        pre.setdefault(w, []).append(z)
    sq = {}
    for y in range(E.q):
        sq.setdefault(E.mul(y, y), []).append(y)
    pts = []
    for x in range(E.q):
        fx = P.evaluate(E, fE, x)
        hx = P.evaluate(E, hE, x) if E.char2 else 0
        if hx == 0:
            ys = sq.get(fx, [])
        else:
            # y = hx * z turns y^2 + hx y = fx into z^2 + z = fx / hx^2
            c = E.div(fx, E.mul(hx, hx))
            ys = [E.mul(hx, z) for z in pre.get(c, [])]
        pts.extend((x, y) for y in sorted(ys))
    return E, pts


def brute_places(C, d, budget=DEFAULT):
    """Number of Frobenius orbits of size exactly d on C(F_{q^d})."""
    E, pts = _ext_points(C, d, budget)
    q = C.q
    exact = 1 if d == 1 else 0          # the point at infinity
    for x, y in pts:
        x1, y1, size = x, y, 0
        while True:
            x1 = E.pow(x1, q)
            y1 = None if y1 is None else E.pow(y1, q)
            size += 1
            if (x1, y1) == (x, y):
                break
        if size == d:
            exact += 1
    if exact % d:
        raise CountMismatch(f"{exact} points of exact orbit size {d}")
    return exact // d


# -- Jacobian by subgroup closure ---------------------------------------------------

def _mumford_candidates(C):
    """Reduced Mumford pairs found by scanning (u, v) against u | v^2 + h v - f."""
    F = C.ctx
    f, h = list(C.f), list(C.h)
    yield zero(C)
    for n in range(1, C.genus + 1):
        for u in P.monics(F, n):
            for vv in product(range(F.q), repeat=n):
                v = P.trim(vv)
                r = P.sub(F, P.add(F, P.mul(F, v, v), P.mul(F, h, v)), f)
                if not P.mod(F, r, u):
                    yield MumfordDivisor(C, tuple(u), tuple(v))


class _ModLattice:
    """Integer row lattice containing N Z^k, kept in echelon form mod N."""

    def __init__(self, k, N):
        self.k, self.N = k, N
        self.rows = {i: [N if j == i else 0 for j in range(k)] for i in range(k)}

    def insert(self, v):
        N = self.N
        v = [x % N for x in v]
        for c in range(self.k):
            if v[c] == 0:
                continue
            row = self.rows[c]
            g, s, t = _egcd(row[c], v[c])
            a, b = row[c] // g, v[c] // g
            new = [(s * x + t * y) % N for x, y in zip(row, v)]
            new[c] = g
            v = [(a * y - b * x) % N for x, y in zip(row, v)]
            self.rows[c] = new

    def matrix(self):
        return Matrix([self.rows[i] for i in range(self.k)])


def _egcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


def brute_jacobian(C, limit=5000):
    """Group structure of J(F_q) from generators found by scanning and BFS closure."""
    if C.is_pline:
        return GroupStructure(1, [], [])
    gens = []
    coords = {zero(C): ()}
    scanned = 0
    for cand in _mumford_candidates(C):
        scanned += 1
        if scanned > limit:
            raise BudgetExceeded(f"more than {limit} divisor classes")
        if cand in coords:
            continue
        gens.append(cand)
        coords = _closure(C, gens)
    k, N = len(gens), len(coords)
    if N != scanned:
        raise CountMismatch(f"closure has {N} elements, scan found {scanned}")
    if k == 0:
        return GroupStructure(1, [], [])
    lat = _ModLattice(k, N)
    for X, c in coords.items():
        for i, G in enumerate(gens):
            c2 = coords[cantor_add(X, G)]
            lat.insert([c[j] + (j == i) - c2[j] for j in range(k)])
    snf = smith_normal_form(lat.matrix(), domain=ZZ)
    factors = sorted(abs(int(snf[i, i])) for i in range(k))
    factors = [d for d in factors if d > 1]
    prod = 1
    for d in factors:
        prod *= d
    if prod != N:
        raise CountMismatch(f"relation lattice has index {prod}, subgroup has {N} elements")
    return GroupStructure(N, factors, gens)


def _closure(C, gens):
    """BFS over the subgroup spanned by gens; each element gets a coordinate vector."""
    k = len(gens)
    start = zero(C)
    coords = {start: (0,) * k}
    frontier = [start]
    while frontier:
        nxt = []
        for X in frontier:
            c = coords[X]
            for i, G in enumerate(gens):
                Y = cantor_add(X, G)
                if Y not in coords:
                    coords[Y] = tuple(c[j] + (j == i) for j in range(k))
                    nxt.append(Y)
        frontier = nxt
    return coords


# -- exhaustive N_q(g) ---------------------------------------------------------------

@dataclass(frozen=True)
class NqResult:
    q: int
    g: int
    nq: int
    witness: dict          # {"f": [...], "h": [...], "spec": str or None}
    models: int            # number of smooth models seen at the maximum count

    def to_dict(self):
        return {"q": self.q, "g": self.g, "nq": self.nq, "witness": self.witness,
                "smooth_models_at_max": self.models}


class _Tables:
    def __init__(self, F):
        q = F.q
        self.F = F
        self.add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        self.mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        if F.char2:
            self.tr = np.array([F.trace(a) for a in range(q)], dtype=np.int64)
        else:
            chi = np.full(q, -1, dtype=np.int64)
            chi[0] = 0
            for a in range(1, q):
                chi[F.mul(a, a)] = 1
            self.chi = chi

    def coeffs(self, n):
        """All coefficient vectors of length n; row i has digits of i, constant first."""
        q = self.F.q
        idx = np.arange(q**n, dtype=np.int64)
        return np.stack([(idx // q**i) % q for i in range(n)], axis=1) if n else idx[:, None] * 0

    def values(self, A):
        """A[i] evaluated at every x in F; shape (rows, q)."""
        q = self.F.q
        acc = np.zeros((A.shape[0], q), dtype=np.int64)
        xs = np.arange(q)
        for i in range(A.shape[1] - 1, -1, -1):
            acc = self.add[self.mul[acc, xs[None, :]], A[:, i][:, None]]
        return acc

    def fiber(self, hv, fv):
        """#{y : y^2 + hv y = fv} elementwise, hv scalar or array."""
        F = self.F
        if not F.char2:
            return 1 + self.chi[fv]
        hv = np.broadcast_to(np.asarray(hv), fv.shape)
        inv2 = np.array([0] + [F.inv(F.mul(a, a)) for a in range(1, F.q)], dtype=np.int64)
        ram = hv == 0
        split = 2 * (self.tr[self.mul[fv, inv2[hv]]] == 0)
        return np.where(ram, 1, split)


def _smooth(F, f, h, g):
    """Smoothness and exact genus g of y^2 + h y = f on the weighted model.

    Degree caps are deg f <= 2g+2 and deg h <= g+1."""
    f, h = P.trim(f), P.trim(h)
    top = 2 * g + 2
    if not F.char2:
        return P.deg(f) in (top - 1, top) and P.deg(P.gcd(F, f, P.derivative(F, f))) == 0
    if not h:
        return False
    df, dh = P.derivative(F, f), P.derivative(F, h)
    crit = P.add(F, P.mul(F, df, df), P.mul(F, P.mul(F, dh, dh), f))
    if P.deg(P.gcd(F, h, crit)) > 0:
        return False
    # chart at infinity: t = 1/x, with f, h reversed to formal degrees top and g+1
    fr = (list(f) + [0] * (top + 1 - len(f)))[::-1]
    hr = (list(h) + [0] * (g + 2 - len(h)))[::-1]
    if hr[0]:
        return True
    f1 = fr[1] if len(fr) > 1 else 0
    h1 = hr[1] if len(hr) > 1 else 0
    return F.add(F.mul(f1, f1), F.mul(F.mul(h1, h1), fr[0])) != 0


def _sweep_counts(F, T, g):
    """Yield (count array over f, h tuple, f coefficient matrix) for every h."""
    q = F.q
    if g == 1:
        # Weierstrass: f monic cubic, deg h <= 1; one point at infinity
        A = np.concatenate([T.coeffs(3), np.ones((q**3, 1), dtype=np.int64)], axis=1)
        fv = T.values(A)
        hs = [()] if not F.char2 else [tuple(hh) for hh in product(range(q), repeat=2)]
        for hh in hs:
            hv = T.values(np.array([list(hh) or [0]], dtype=np.int64))[0] if hh else 0
            cnt = 1 + T.fiber(hv, fv).sum(axis=1)
            yield cnt, hh, A
        return
    # g = 2: y^2 + h y = f, deg f <= 6, deg h <= 3 (h = 0 in odd characteristic)
    A = T.coeffs(7)
    fv = T.values(A)
    hs = [()] if not F.char2 else [tuple(hh) for hh in product(range(q), repeat=4)]
    for hh in hs:
        hv = T.values(np.array([list(hh)], dtype=np.int64))[0] if hh else 0
        h3 = hh[3] if hh else 0
        inf = T.fiber(np.int64(h3), A[:, 6])
        inf = np.where((A[:, 6] == 0) & (h3 == 0), 1, inf)   # deg f = 5: one point
        cnt = inf + T.fiber(hv, fv).sum(axis=1)
        yield cnt, hh, A


def brute_nq(q, g):
    """Exact N_q(g) for q <= 5 and g <= 2 by exhausting all models."""
    from .bounds import prime_power

    p, k = prime_power(q)
    if q > 5 or g not in (0, 1, 2):
        raise BudgetExceeded("exhaustion is limited to q <= 5 and g <= 2")
    F = make_field(p, k)
    if g == 0:
        return NqResult(q, 0, q + 1, {"f": [], "h": [], "spec": f"pline p={p} k={k}"}, 1)
    T = _Tables(F)
    best, wit, models = -1, None, 0
    blocks = list(_sweep_counts(F, T, g))
    # candidate counts in descending order; the first smooth model wins
    for value in sorted({int(c) for cnt, _, _ in blocks for c in np.unique(cnt)}, reverse=True):
        if value < best:
            break
        for cnt, hh, A in blocks:
            for i in np.flatnonzero(cnt == value):
                f = P.trim(A[i].tolist())
                h = P.trim(list(hh))
                if _smooth(F, f, h, g):
                    if wit is None:
                        best, wit = value, (f, h)
                    models += 1
    f, h = wit
    return NqResult(q, g, best, _witness(F, f, h), models)


def _witness(F, f, h):
    spec = None
    try:
        spec = render_curve(validate_and_genus(F, f, h))
    except Exception:
        pass                      # even-degree (real) model, no text form
    enc = (lambda a: [F.digits(c) for c in a]) if F.k > 1 else list
    return {"f": enc(f), "h": enc(h), "spec": spec}


def golden(cells=None, jobs=1):
    """The oracle golden table as a canonical JSON string."""
    from .bounds import serre_interval

    cells = cells or [(q, g) for q in (2, 3, 4, 5) for g in (0, 1, 2)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_golden_cell, cells))
    else:
        results = [_golden_cell(c) for c in cells]
    out = []
    for (q, g), res in zip(cells, results):
        lo, hi = serre_interval(q, g)
        d = res.to_dict()
        d["refined_weil_upper"] = hi
        d["within_bounds"] = lo <= res.nq <= hi
        out.append(d)
    return json.dumps({"entries": out}, indent=2, sort_keys=True) + "\n"


def _golden_cell(cell):
    return brute_nq(*cell)


# -- cover counts on explicit models ---------------------------------------------------

def model_cover_count(B, m=1, budget=DEFAULT):
    """#B(F_{q^m}) from an explicit model of the cover.

    Supported: double Kummer covers of P^1 (w^2 = a c, a smooth hyperelliptic
    model) and Artin-Schreier covers z^2 + z = a + b y with polynomial a, b on
    any base (an affine model that is smooth over the affine base, with one
    point over the odd-order pole at infinity)."""
    C = B.base
    fn = B.defining
    E, emb, fE, hE = base_change(C, m)
    if B.degree != 2:
        raise UnsupportedShape("model counts cover degree-2 covers only")
    if B.r == 2:
        if not C.is_pline:
            raise UnsupportedShape("Kummer model counts need a projective-line base")
        W = P.map_coeffs(P.mul(C.ctx, list(fn.a), list(fn.c)), emb)
        if P.deg(P.gcd(E, W, P.derivative(E, W))) > 0:
            raise UnsupportedShape("a c is not squarefree")
        sq = {}
        for w in range(E.q):
            sq[E.mul(w, w)] = sq.get(E.mul(w, w), 0) + 1
        total = sum(sq.get(P.evaluate(E, W, x), 0) for x in range(E.q))
        if P.deg(W) % 2:
            return total + 1
        return total + sq.get(W[-1], 0)
    if list(fn.c) != [1] or any(pl.kind != "infinity" for _, pl, _ in B.ramification):
        raise UnsupportedShape("Artin-Schreier model counts need a polynomial defining function")
    a, b = P.map_coeffs(fn.a, emb), P.map_coeffs(fn.b, emb)
    pre = {}
    for z in range(E.q):
        c = E.add(E.mul(z, z), z)
        pre[c] = pre.get(c, 0) + 1
    _, pts = _ext_points(C, m, budget)
    total = 1
    for x, y in pts:
        val = P.evaluate(E, a, x)
        if b:
            val = E.add(val, E.mul(P.evaluate(E, b, x), y))
        total += pre.get(val, 0)
    return total

