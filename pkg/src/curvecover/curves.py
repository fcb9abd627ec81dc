"""Curve models over F_q, point counts, L-polynomials and places.

Two shapes are supported: the projective line, and imaginary hyperelliptic
models y^2 + h(x) y = f(x) with f monic of degree 2g+1 (so there is exactly
one point at infinity, and it is rational).  In odd characteristic h = 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import mpmath

from . import poly as P
from .config import DEFAULT
from .errors import (BudgetExceeded, NoSuchPlace, NonIntegerResult, ParseError, SingularModel,
                     UnsupportedShape)
from .gf import extension, make_field


@dataclass(frozen=True)
class CurveModel:
    ctx: object
    kind: str               # "pline" or "hyperelliptic"
    f: tuple = ()
    h: tuple = ()
    genus: int = 0

    @property
    def q(self):
        return self.ctx.q

    @property
    def is_pline(self):
        return self.kind == "pline"

    def __repr__(self):
        return render_curve(self)


def projective_line(ctx):
    return CurveModel(ctx, "pline")


def validate_and_genus(ctx, f, h=()):
    """Check an imaginary hyperelliptic model and return it with its genus."""
    f, h = P.trim(f), P.trim(h)
    if len(f) < 4 or P.deg(f) % 2 == 0:
        raise UnsupportedShape(f"deg f must be odd and >= 3, got {P.deg(f)}")
    if f[-1] != 1:
        raise UnsupportedShape("f must be monic")
    g = (P.deg(f) - 1) // 2
    if ctx.char2:
        if not h:
            raise SingularModel("h = 0 in characteristic 2 gives an inseparable model")
        if P.deg(h) > g:
            raise UnsupportedShape(f"deg h = {P.deg(h)} exceeds genus {g}")
        dh, df = P.derivative(ctx, h), P.derivative(ctx, f)
        # singular affine points: h(x0) = 0 and f'(x0)^2 = h'(x0)^2 f(x0)
        crit = P.sub(ctx, P.mul(ctx, df, df), P.mul(ctx, P.mul(ctx, dh, dh), f))
        wit = P.gcd(ctx, h, crit)
        if P.deg(wit) > 0:
            raise SingularModel(f"singular over the roots of {wit}", witness=wit)
    else:
        if h:
            raise UnsupportedShape("odd characteristic models must have h = 0")
        wit = P.gcd(ctx, f, P.derivative(ctx, f))
        if P.deg(wit) > 0:
            raise SingularModel(f"f has repeated factor {wit}", witness=wit)
    return CurveModel(ctx, "hyperelliptic", tuple(f), tuple(h), g)


def hyperelliptic(p, k, f, h=()):
    return validate_and_genus(make_field(p, k), f, h)


# -- text form -----------------------------------------------------------------

def _render_coeffs(ctx, a):
    if ctx.k == 1:
        return "[" + ",".join(str(c) for c in a) + "]"
    return "[" + ",".join("[" + ",".join(str(d) for d in ctx.digits(c)) + "]" for c in a) + "]"


def render_curve(C):
    p, k = C.ctx.p, C.ctx.k
    if C.is_pline:
        return f"pline p={p} k={k}"
    return f"hyperelliptic p={p} k={k} f={_render_coeffs(C.ctx, C.f)} h={_render_coeffs(C.ctx, C.h)}"


def _parse_coeffs(ctx, text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad coefficient list {text!r}") from exc
    out = []
    for c in raw:
        if isinstance(c, list):
            out.append(ctx.from_digits(c + [0] * (ctx.k - len(c))))
        elif isinstance(c, int) and 0 <= c < ctx.q:
            out.append(c)
        else:
            raise ParseError(f"bad coefficient {c!r}")
    return out


def parse_curve(text):
    m = re.fullmatch(r"\s*(pline|hyperelliptic)\s+p=(\d+)\s+k=(\d+)(.*)", text)
    if not m:
        raise ParseError(f"cannot parse curve spec {text!r}")
    ctx = make_field(int(m.group(2)), int(m.group(3)))
    if m.group(1) == "pline":
        if m.group(4).strip():
            raise ParseError("pline takes no coefficients")
        return projective_line(ctx)
    fm = re.search(r"f=(\[[^ ]*\])", m.group(4))
    hm = re.search(r"h=(\[[^ ]*\])", m.group(4))
    if not fm:
        raise ParseError("hyperelliptic spec needs f=[...]")
    f = _parse_coeffs(ctx, fm.group(1))
    h = _parse_coeffs(ctx, hm.group(1)) if hm else []
    return validate_and_genus(ctx, f, h)


# -- base change and point enumeration ---------------------------------------------

@lru_cache(maxsize=None)
def base_change(C, m):
    """(E, emb, f_E, h_E): the field F_{q^m} and the model's coefficients in it."""
    E, emb = extension(C.ctx, m)
    return E, emb, P.map_coeffs(C.f, emb), P.map_coeffs(C.h, emb)


@lru_cache(maxsize=None)
def char_table(E):
    """Quadratic character of F (odd q) as a list indexed by encoding."""
    chi = [-1] * E.q
    chi[0] = 0
    for z in range(1, E.q):
        chi[E.mul(z, z)] = 1
    return chi


@lru_cache(maxsize=None)
def trace_table(E):
    """Absolute trace of every element, via linearity on the digit basis."""
    basis = [E.trace(E.p**i) for i in range(E.k)]
    p = E.p
    tr = [0] * E.q
    for a in range(1, E.q):
        # a = a' + p^i * c where i is the lowest nonzero digit position
        i, b = 0, a
        while b % p == 0:
            b //= p
            i += 1
        tr[a] = (tr[a - p**i] + basis[i]) % p
    return tr


@lru_cache(maxsize=None)
def as_root_table(E):
    """For binary E: least z with z^2 + z = c, or -1 when c has trace 1."""
    out = [-1] * E.q
    for z in range(E.q - 1, -1, -1):
        out[E.add(E.mul(z, z), z)] = z
    return out


def _check_budget(q, m, budget):
    if q**m > budget.field_size:
        raise BudgetExceeded(f"q^m = {q}^{m} exceeds enumeration budget")


def y_values(C, E, fE, hE, x):
    """All y in E with y^2 + h(x) y = f(x), ascending."""
    fx = P.evaluate(E, fE, x)
    if E.char2:
        hx = P.evaluate(E, hE, x)
        if hx == 0:
            return [E.sqrt(fx)]
        c = E.div(fx, E.mul(hx, hx))
        z = as_root_table(E)[c]
        if z < 0:
            return []
        y0 = E.mul(hx, z)
        return sorted({y0, E.add(y0, hx)})
    r = E.sqrt(fx)
    if r is None:
        return []
    return sorted({r, E.neg(r)})


def affine_points(C, m, budget=DEFAULT):
    """Yield (x, y) over F_{q^m} in ascending encoding order."""
    _check_budget(C.q, m, budget)
    E, emb, fE, hE = base_change(C, m)
    if C.is_pline:
        for x in range(E.q):
            yield x, None
        return
    for x in range(E.q):
        for y in y_values(C, E, fE, hE, x):
            yield x, y


def count_points(C, m, budget=DEFAULT):
    """#C(F_{q^m}) by fiber counting over every x, plus the point at infinity."""
    _check_budget(C.q, m, budget)
    if C.is_pline:
        return C.q**m + 1
    E, emb, fE, hE = base_change(C, m)
    total = 1
    ev = P.evaluate
    if E.char2:
        tr = trace_table(E)
        for x in range(E.q):
            hx = ev(E, hE, x)
            if hx == 0:
                total += 1
            elif tr[E.div(ev(E, fE, x), E.mul(hx, hx))] == 0:
                total += 2
    else:
        chi = char_table(E)
        for x in range(E.q):
            total += 1 + chi[ev(E, fE, x)]
    return total


# -- L-polynomials ----------------------------------------------------------------

@dataclass(frozen=True)
class LPolynomial:
    q: int
    coeffs: tuple            # b_0 .. b_{2g}

    @property
    def genus(self):
        return (len(self.coeffs) - 1) // 2

    def __call__(self, t):
        return sum(b * t**i for i, b in enumerate(self.coeffs))

    def power_sums(self, n):
        """s_1..s_n where s_m = sum of m-th powers of the reciprocal roots."""
        b = list(self.coeffs)
        s = []
        for m in range(1, n + 1):
            bm = b[m] if m < len(b) else 0
            acc = -m * bm
            for i in range(1, m):
                acc -= s[i - 1] * (b[m - i] if m - i < len(b) else 0)
            s.append(acc)
        return s

    def reciprocal_roots(self, dps=40):
        if self.genus == 0:
            return []
        with mpmath.workdps(dps):
            # T^{2g} L(1/T) has the reciprocal roots as ordinary roots
            return mpmath.polyroots(list(self.coeffs), maxsteps=200, extraprec=4 * dps)


def l_from_power_sums(q, g, s):
    """Newton identities for b_1..b_g, then the functional equation."""
    b = [1]
    for m in range(1, g + 1):
        acc = -sum(s[i - 1] * b[m - i] for i in range(1, m + 1))
        if acc % m:
            raise NonIntegerResult(f"Newton identity gives non-integer b_{m}")
        b.append(acc // m)
    for i in range(g + 1, 2 * g + 1):
        b.append(q ** (i - g) * b[2 * g - i])
    return LPolynomial(q, tuple(b))


def l_polynomial(C, budget=DEFAULT):
    g = C.genus
    s = [C.q**m + 1 - count_points(C, m, budget) for m in range(1, g + 1)]
    return l_from_power_sums(C.q, g, s)


def counts_from_l(L, m):
    return L.q**m + 1 - L.power_sums(m)[-1]


def place_count_nd(C, d, L=None):
    """n_d(C) by Moebius inversion of the extension counts."""
    if L is None:
        L = l_polynomial(C)
    total = sum(P.mobius(d // m) * counts_from_l(L, m) for m in P.divisors(d))
    if total % d:
        raise NonIntegerResult(f"Moebius sum {total} not divisible by {d}")
    return total // d


def weil_verify(C, L=None):
    if L is None:
        L = l_polynomial(C)
    q, g, b = L.q, L.genus, L.coeffs
    fe = all(b[2 * g - i] == q ** (g - i) * b[i] for i in range(g + 1)) and L(1) > 0
    weil = True
    for m in range(1, 2 * g + 1):
        dev = counts_from_l(L, m) - q**m - 1
        weil &= dev * dev <= 4 * g * g * q**m
    from math import isqrt
    n1 = counts_from_l(L, 1)
    serre = abs(n1 - q - 1) <= g * isqrt(4 * q)
    err = 0.0
    if g:
        with mpmath.workdps(40):
            sq = mpmath.sqrt(q)
            err = float(max(abs(abs(r) - sq) for r in L.reciprocal_roots()))
    return {
        "functional_equation": bool(fe),
        "weil_interval": bool(weil),
        "serre_refined": bool(serre),
        "root_moduli_max_err": err,
    }


# -- places --------------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A closed point.

    ``u`` is the minimal polynomial of the x-coordinate (over F_q); for split
    and ramified places ``v`` gives y as a polynomial in x modulo u, so that
    (u, v) is the Mumford form of the place.  Inert places (x of degree d/2, y
    not in F_q(x)) have v = None.  ``point`` is a representative over
    F_{q^degree} when it was computed by enumeration.
    """

    curve: CurveModel
    degree: int
    kind: str                 # "infinity", "split", "ramified", "inert", "line"
    u: tuple = ()
    v: tuple | None = ()
    point: tuple | None = None

    @property
    def generic(self):
        return self.kind == "split" or (self.kind == "line" and self.degree >= 1)

    def sort_key(self):
        if self.kind == "infinity":
            return (0,)
        return (1, P.key(list(self.u)), P.key(list(self.v or ())))

    def render(self):
        F = self.curve.ctx
        if self.kind == "infinity":
            return "inf"
        s = f"u={_render_coeffs(F, self.u)}"
        if self.v is not None and self.kind != "line":
            s += f" v={_render_coeffs(F, self.v)}"
        return s


def infinity(C):
    return Place(C, 1, "infinity")


def frobenius_orbit(C, m, pt):
    """Orbit of a point over F_{q^m} under x -> x^q."""
    E = base_change(C, m)[0]
    q = C.q
    orbit = [pt]
    x, y = pt
    while True:
        x = E.pow(x, q)
        y = None if y is None else E.pow(y, q)
        if (x, y) == pt:
            return orbit
        orbit.append((x, y))


def _pull_back(C, E, emb, a):
    inv = {v: i for i, v in enumerate(emb)}
    return tuple(inv[c] for c in a)


def _orbit_mumford(C, m, orbit):
    E, emb, fE, hE = base_change(C, m)
    u = [1]
    for x, _ in orbit:
        u = P.mul(E, u, [E.neg(x), 1])
    if orbit[0][1] is None:
        return _pull_back(C, E, emb, u), ()
    v = []
    xs = [x for x, _ in orbit]
    for i, (xi, yi) in enumerate(orbit):
        num, den = [1], 1
        for j, xj in enumerate(xs):
            if j != i:
                num = P.mul(E, num, [E.neg(xj), 1])
                den = E.mul(den, E.sub(xi, xj))
        v = P.add(E, v, P.scale(E, E.div(yi, den), num))
    return _pull_back(C, E, emb, u), _pull_back(C, E, emb, v)


def find_place(C, d, generic_only=False, budget=DEFAULT):
    """The canonical degree-d place: least representative over F_{q^d}."""
    if d == 1 and not generic_only:
        return infinity(C)
    _check_budget(C.q, d, budget)
    E, emb, fE, hE = base_change(C, d)
    for x, y in affine_points(C, d, budget):
        orbit = frobenius_orbit(C, d, (x, y))
        if len(orbit) != d:
            continue
        xs = {pt[0] for pt in orbit}
        if C.is_pline:
            u, _ = _orbit_mumford(C, d, orbit)
            return Place(C, d, "line", u, (), (x, y))
        ybar = E.sub(E.neg(y), P.evaluate(E, hE, x))
        ramified = ybar == y
        if len(xs) < d:
            if generic_only:
                continue
            w = [1]
            xl = sorted(xs)
            for xi in xl:
                w = P.mul(E, w, [E.neg(xi), 1])
            return Place(C, d, "inert", _pull_back(C, E, emb, w), None, (x, y))
        if ramified and generic_only:
            continue
        u, v = _orbit_mumford(C, d, orbit)
        return Place(C, d, "ramified" if ramified else "split", u, v, (x, y))
    raise NoSuchPlace(f"no {'generic ' if generic_only else ''}place of degree {d}")


# -- places from irreducible polynomials (no enumeration of F_{q^d}) ------------------

def ext_is_square(F, a, u):
    Q = F.q ** P.deg(u)
    if not a or F.char2:
        return True
    return P.powmod(F, a, (Q - 1) // 2, u) == [1]


def ext_sqrt(F, a, u):
    """Canonical square root in F[x]/(u) for irreducible u, or None."""
    d = P.deg(u)
    Q = F.q**d
    a = P.mod(F, a, u)
    if not a:
        return []
    if F.char2:
        return P.powmod(F, a, Q // 2, u)
    if not ext_is_square(F, a, u):
        return None
    s, t = 0, Q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = next(c for c in P.polys_upto(F, d - 1) if c and not ext_is_square(F, c, u))
    m, c = s, P.powmod(F, z, t, u)
    tt, r = P.powmod(F, a, t, u), P.powmod(F, a, (t + 1) // 2, u)
    while tt != [1]:
        i, x = 0, tt
        while x != [1]:
            x, i = P.mulmod(F, x, x, u), i + 1
        b = P.powmod(F, c, 2 ** (m - i - 1), u)
        m, c = i, P.mulmod(F, b, b, u)
        tt, r = P.mulmod(F, tt, c, u), P.mulmod(F, r, b, u)
    nr = P.neg(F, r)
    return min(r, nr, key=P.key)


def ext_artin_schreier(F, c, u, e=1):
    """A solution z in F[x]/(u) of z^(p^e) - z = c, or None.

    The map z -> z^(p^e) - z is F_p-linear on the d*k dimensional F_p-space
    F[x]/(u); we solve it by Gaussian elimination over F_p."""
    d, k, p = P.deg(u), F.k, F.p
    Fp = make_field(p, 1)
    n = d * k
    pe = p**e

    def vec(a):
        a = list(a) + [0] * (d - len(a))
        out = []
        for coef in a:
            out.extend(F.digits(coef))
        return out

    cols = []
    for i in range(d):
        for j in range(k):
            basis = P.trim([0] * i + [p**j])
            img = P.sub(F, P.powmod(F, basis, pe, u), basis)
            cols.append(vec(img))
    target = vec(P.mod(F, c, u))
    # augmented system: sum z_j col_j = target
    rows = [[cols[j][i] for j in range(n)] + [Fp.neg(target[i])] for i in range(n)]
    for sol in _affine_solutions(Fp, rows, n):
        z = []
        for i in range(d):
            z.append(F.from_digits(sol[i * k:(i + 1) * k]))
        return P.trim(z)
    return None


def _affine_solutions(Fp, rows, n):
    """Solutions of A z + b = 0 (rows hold [A | b]); yields the one with free variables 0."""
    basis = P.nullspace(Fp, rows, n + 1)
    for v in basis:
        if v[n]:
            inv = Fp.inv(v[n])
            yield [Fp.mul(inv, x) for x in v[:n]]
            return


def places_over(C, u):
    """Places lying over the monic irreducible u(x), in canonical order."""
    F = C.ctx
    d = P.deg(u)
    u = tuple(u)
    if C.is_pline:
        return [Place(C, d, "line", u, ())]
    f, h = list(C.f), list(C.h)
    if F.char2:
        hm = P.mod(F, h, list(u))
        if not hm:
            return [Place(C, d, "ramified", u, tuple(ext_sqrt(F, f, list(u))))]
        hinv = P.invmod(F, hm, list(u))
        c = P.mulmod(F, P.mod(F, f, list(u)), P.mulmod(F, hinv, hinv, list(u)), list(u))
        z = ext_artin_schreier(F, c, list(u))
        if z is None:
            return [Place(C, 2 * d, "inert", u, None)]
        v1 = P.mulmod(F, hm, z, list(u))
        v2 = P.mod(F, P.add(F, v1, hm), list(u))
    else:
        fm = P.mod(F, f, list(u))
        if not fm:
            return [Place(C, d, "ramified", u, ())]
        r = ext_sqrt(F, fm, list(u))
        if r is None:
            return [Place(C, 2 * d, "inert", u, None)]
        v1, v2 = r, P.mod(F, P.neg(F, r), list(u))
    vs = sorted([v1, v2], key=P.key)
    return [Place(C, d, "split", u, tuple(v)) for v in vs]


def generic_places(C, d):
    """Generic degree-d places in canonical (u, v) order, without enumerating F_{q^d}."""
    for u in P.irreducibles(C.ctx, d):
        for pl in places_over(C, u):
            if pl.degree == d and pl.generic:
                yield pl


def rational_points(C):
    """Affine rational points as (x, y) over F_q, ascending (infinity excluded)."""
    return list(affine_points(C, 1))


def curve_info(C):
    L = l_polynomial(C)
    return {
        "spec": render_curve(C),
        "q": C.q,
        "genus": C.genus,
        "points": counts_from_l(L, 1),
        "l_polynomial": list(L.coeffs),
        "jacobian_order": L(1),
    }
