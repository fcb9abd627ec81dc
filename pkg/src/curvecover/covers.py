"""Covers of curves given by y^r = f and z^(p^e) - z = f.

A cover is kept abstractly as (base curve, defining function); nothing is
re-embedded as a plane model.  Functions on a hyperelliptic base are stored
as (a + b*y) / c with a, b, c polynomials in x.  Point counts are fiber sums
over the points of the base, using a local expansion wherever the defining
function has a zero or a pole.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import product
from math import gcd

from . import poly as P
from .config import DEFAULT
from .curves import (
    Place,
    _check_budget,
    affine_points,
    base_change,
    count_points,
    generic_places,
    infinity,
    l_from_power_sums,
    places_over,
    render_curve,
)
from .errors import (
    BudgetExceeded,
    GenusTooSmall,
    HypothesisNotMet,
    InconsistentRamification,
    NoCollision,
    NoRationalPoints,
    NoSplittingPair,
    ParseError,
    SearchBudgetExceeded,
    UnsupportedShape,
)
from .jacobian import cantor_add, compose, jacobian, negate, place_to_divisor


# -- functions on the base -------------------------------------------------------

@dataclass(frozen=True)
class Func:
    """(a + b*y) / c; on P^1 b is always empty."""

    a: tuple = ()
    b: tuple = ()
    c: tuple = (1,)

    @property
    def is_zero(self):
        return not self.a and not self.b

    def is_constant(self):
        return not self.b and P.deg(list(self.a)) <= 0 and P.deg(list(self.c)) == 0


def make_func(F, a=(), b=(), c=(1,)):
    a, b, c = P.trim(a), P.trim(b), P.trim(c)
    if not c:
        raise ZeroDivisionError("zero denominator")
    g = P.gcd(F, P.gcd(F, a, b), c) if (a or b) else c
    if P.deg(g) > 0:
        a, b, c = (P.exact_div(F, t, g) if t else [] for t in (a, b, c))
    s = F.inv(c[-1])
    return Func(tuple(P.scale(F, s, a)), tuple(P.scale(F, s, b)), tuple(P.scale(F, s, c)))


def func_add(C, f1, f2):
    F = C.ctx
    a = P.add(F, P.mul(F, list(f1.a), list(f2.c)), P.mul(F, list(f2.a), list(f1.c)))
    b = P.add(F, P.mul(F, list(f1.b), list(f2.c)), P.mul(F, list(f2.b), list(f1.c)))
    return make_func(F, a, b, P.mul(F, list(f1.c), list(f2.c)))


def func_mul(C, f1, f2):
    F = C.ctx
    a1, b1, a2, b2 = list(f1.a), list(f1.b), list(f2.a), list(f2.b)
    bb = P.mul(F, b1, b2)
    a = P.add(F, P.mul(F, a1, a2), P.mul(F, bb, list(C.f)))
    b = P.sub(F, P.add(F, P.mul(F, a1, b2), P.mul(F, a2, b1)), P.mul(F, bb, list(C.h)))
    return make_func(F, a, b, P.mul(F, list(f1.c), list(f2.c)))


def func_scale(C, s, f):
    return make_func(C.ctx, P.scale(C.ctx, s, list(f.a)), P.scale(C.ctx, s, list(f.b)), f.c)


def func_add_const(C, s, f):
    return func_add(C, f, Func((s,) if s else ()))


def norm(C, a, b):
    """N(a + b y) = a^2 - a b h - b^2 f."""
    F = C.ctx
    a, b = list(a), list(b)
    out = P.sub(F, P.mul(F, a, a), P.mul(F, P.mul(F, a, b), list(C.h)))
    return P.sub(F, out, P.mul(F, P.mul(F, b, b), list(C.f)))


def _ord(F, a, w):
    if not a:
        raise ValueError("order of zero")
    n = 0
    while True:
        qt, r = P.divmod_(F, a, w)
        if r:
            return n
        a, n = qt, n + 1


def _hensel_y(C, v, w, K):
    """Lift y = v mod w to a root of y^2 + h y - f modulo w^K."""
    F = C.ctx
    M = P.power(F, w, K)
    f, h = list(C.f), list(C.h)
    V = list(v)
    prec = 1
    while prec < K:
        G = P.mod(F, P.sub(F, P.add(F, P.mul(F, V, V), P.mul(F, h, V)), f), M)
        if not G:
            break
        dG = P.add(F, P.add(F, V, V), h)
        V = P.mod(F, P.sub(F, V, P.mul(F, G, P.invmod(F, dG, M))), M)
        prec *= 2
    return V


def _infinity_order(C, f):
    """v_inf(f)."""
    if C.is_pline:
        return P.deg(list(f.c)) - P.deg(list(f.a))
    g = C.genus
    da = 2 * P.deg(list(f.a)) if f.a else -1
    db = 2 * P.deg(list(f.b)) + 2 * g + 1 if f.b else -1
    return 2 * P.deg(list(f.c)) - max(da, db)


def divisor_of(C, f):
    """div(f) as a list of (Place, valuation), infinity last.

    The affine part comes from factoring the norm of the numerator and the
    denominator; split places are separated by Hensel-lifting y."""
    F = C.ctx
    if f.is_zero:
        raise ValueError("divisor of the zero function")
    a, b, c = list(f.a), list(f.b), list(f.c)
    N = norm(C, a, b) if not C.is_pline else a
    ws = {tuple(w) for w, _ in P.factor(F, N)[1]}
    if P.deg(c) > 0:
        ws |= {tuple(w) for w, _ in P.factor(F, c)[1]}
    out = []
    for w in sorted(ws, key=lambda t: P.key(list(t))):
        w = list(w)
        oN = _ord(F, N, w)
        oc = _ord(F, c, w)
        pls = places_over(C, w)
        if C.is_pline:
            out.append((pls[0], oN - oc))
            continue
        kind = pls[0].kind
        if kind == "ramified":
            vals = [oN - 2 * oc]
        elif kind == "inert":
            vals = [oN // 2 - oc]
        else:
            K = oN + 1
            vals = []
            for pl in pls:
                V = _hensel_y(C, list(pl.v), w, K)
                r = P.mod(F, P.add(F, a, P.mul(F, b, V)), P.power(F, w, K))
                vals.append((_ord(F, r, w) if r else K) - oc)
        for pl, val in zip(pls, vals):
            if val:
                out.append((pl, val))
    vinf = _infinity_order(C, f)
    if sum(pl.degree * v for pl, v in out) + vinf != 0:
        raise InconsistentRamification("divisor of a function must have degree 0")
    if vinf:
        out.append((infinity(C), vinf))
    return out


def poles(C, f):
    return [(pl, -v) for pl, v in divisor_of(C, f) if v < 0]


# -- local expansions at points over F_{q^m} ------------------------------------

def _smul(E, A, B, K):
    out = [0] * K
    for i, x in enumerate(A[:K]):
        if x:
            for j in range(min(len(B), K - i)):
                if B[j]:
                    out[i + j] = E.add(out[i + j], E.mul(x, B[j]))
    return out


def _sadd(E, A, B, K):
    A = list(A[:K]) + [0] * (K - len(A[:K]))
    for i, y in enumerate(B[:K]):
        A[i] = E.add(A[i], y)
    return A


def _sinv(E, A, K):
    inv0 = E.inv(A[0])
    out = [inv0] + [0] * (K - 1)
    for n in range(1, K):
        acc = 0
        for i in range(1, min(n, len(A) - 1) + 1):
            if A[i]:
                acc = E.add(acc, E.mul(A[i], out[n - i]))
        out[n] = E.neg(E.mul(acc, inv0))
    return out


def _scompose(E, p, X, K):
    acc = [0] * K
    for c in reversed(p):
        acc = _sadd(E, _smul(E, acc, X, K), [c], K)
    return acc


def _lead(A):
    for i, x in enumerate(A):
        if x:
            return i, x
    return None, 0


def _newton(E, G, dG, S, K):
    for _ in range(2 * K.bit_length() + 2):
        g = G(S)
        if not any(g):
            return S
        S = _sadd(E, S, [E.neg(x) for x in _smul(E, g, _sinv(E, dG(S), K), K)], K)
    raise ArithmeticError("local expansion did not converge")  # pragma: no cover


def local_data(C, f, m, pt):
    """(valuation, leading unit) of f at a point over F_{q^m}; pt None = infinity.

    Uniformizers: x - x0 at unramified points, y - y0 at ramified ones, 1/x
    and x^g/y at infinity.  The unit depends on this choice only up to a
    t-th power when t divides the valuation, which is all fiber counts use."""
    E, emb, fE, hE = base_change(C, m)
    a, b, c = (P.map_coeffs(t, emb) for t in (f.a, f.b, f.c))
    if pt is None:
        v = _infinity_order(C, f)
        if C.is_pline or not b:
            top = a[-1]
        elif not a:
            top = b[-1]
        else:
            top = a[-1] if 2 * P.deg(a) > 2 * P.deg(b) + 2 * C.genus + 1 else b[-1]
        return v, E.div(top, c[-1])
    x0, y0 = pt
    num = P.evaluate(E, a, x0)
    if y0 is not None and b:
        num = E.add(num, E.mul(P.evaluate(E, b, x0), y0))
    den = P.evaluate(E, c, x0)
    if num and den:
        return 0, E.div(num, den)
    g = C.genus
    K = max(2 * P.deg(a) if a else 0, 2 * P.deg(b) + 2 * g + 1 if b else 0, 2 * P.deg(c), 1) + 2
    if C.is_pline:
        X, Y = [x0, 1], None
    else:
        f_, h_ = fE, hE
        ramified = E.add(E.add(y0, y0), P.evaluate(E, h_, x0)) == 0
        if not ramified:
            X = [x0, 1]
            H, Fx = _scompose(E, h_, X, K), _scompose(E, f_, X, K)
            Y = _newton(
                E,
                lambda Y: _sadd(E, _sadd(E, _smul(E, Y, Y, K), _smul(E, H, Y, K), K),
                                [E.neg(t) for t in Fx], K),
                lambda Y: _sadd(E, _sadd(E, Y, Y, K), H, K),
                [y0], K)
        else:
            Y = [y0, 1]
            dh, df = P.derivative(E, h_), P.derivative(E, f_)
            Y2 = _smul(E, Y, Y, K)
            X = _newton(
                E,
                lambda X: _sadd(E, _sadd(E, Y2, _smul(E, _scompose(E, h_, X, K), Y, K), K),
                                [E.neg(t) for t in _scompose(E, f_, X, K)], K),
                lambda X: _sadd(E, _smul(E, _scompose(E, dh, X, K), Y, K),
                                [E.neg(t) for t in _scompose(E, df, X, K)], K),
                [x0], K)
    A = _scompose(E, a, X, K)
    if Y is not None and b:
        A = _sadd(E, A, _smul(E, _scompose(E, b, X, K), Y, K), K)
    D = _scompose(E, c, X, K)
    va, la = _lead(A)
    vd, ld = _lead(D)
    if va is None or vd is None:
        raise ArithmeticError("expansion precision too small")  # pragma: no cover
    return va - vd, E.div(la, ld)


# -- covers ------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSpec:
    """y^r = f, then z^pe - z = f on top (r = 1 or pe = 1 for a single stage).

    ``ramification`` holds (stage, Place of the base, exponent); the exponent
    is the different contributed over that place divided by its degree, so
    each stage obeys 2g' - 2 = deg (2g - 2) + sum(deg * exponent)."""

    base: object
    r: int
    pe: int
    defining: Func
    ramification: tuple
    expected_genus: int
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def kind(self):
        if self.r > 1 and self.pe > 1:
            return "composite"
        return "kummer" if self.r > 1 else "artin_schreier"

    @property
    def degree(self):
        return self.r * self.pe


def _coeffs_json(F, a):
    return [F.digits(c) if F.k > 1 else c for c in a]


def cover_to_dict(B):
    F = B.base.ctx
    f = B.defining
    return {
        "base": render_curve(B.base),
        "kind": B.kind,
        "exponents": [B.r, B.pe],
        "defining": {
            "a": _coeffs_json(F, f.a),
            "b": _coeffs_json(F, f.b),
            "denom_a": _coeffs_json(F, f.c),
            "denom_b": [],
        },
        "ramification": [[st, pl.render(), pl.degree, e] for st, pl, e in B.ramification],
        "genus": B.expected_genus,
        **({"meta": B.meta} if B.meta else {}),
    }


def cover_to_json(B):
    return json.dumps(cover_to_dict(B), sort_keys=True)


def _coeffs_from_json(F, a):
    return tuple(F.from_digits(c) if isinstance(c, list) else c for c in a)


def cover_from_dict(d):
    """Rebuild a cover from its JSON form, recomputing ramification and genus.

    Raises InconsistentRamification when the stored data disagree with the
    recomputation."""
    from .curves import parse_curve

    try:
        C = parse_curve(d["base"])
        r, pe = d["exponents"]
        raw = d["defining"]
        F = C.ctx
        f = make_func(F, _coeffs_from_json(F, raw["a"]), _coeffs_from_json(F, raw["b"]),
                      _coeffs_from_json(F, raw["denom_a"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed cover description: {exc}") from exc
    B = make_cover(C, f, r, pe, **d.get("meta", {}))
    if B.expected_genus != d.get("genus", B.expected_genus):
        raise InconsistentRamification(f"stored genus {d['genus']} != {B.expected_genus}")
    stored = d.get("ramification")
    if stored is not None and stored != cover_to_dict(B)["ramification"]:
        raise InconsistentRamification("stored ramification differs from recomputation")
    return B


def _ramification(C, f, r, pe, div=None):
    """Stage-wise different exponents read off div(f)."""
    div = divisor_of(C, f) if div is None else div
    p = C.ctx.p
    if r > 1 and gcd(r, *(v for _, v in div)) != 1:
        # an even divisor is fine for r = 2 unless f is a constant times a square
        if r != 2 or _is_geometric_square(C, f):
            raise UnsupportedShape("y^r = f is not geometrically irreducible")
    out = []
    if r > 1:
        for pl, v in div:
            t = gcd(r, v)
            if t < r:
                out.append(("kummer", pl, r - t))
    if pe > 1:
        has_pole = False
        for pl, v in div:
            if v >= 0:
                continue
            t = gcd(r, v)
            mm = -v * (r // t)
            if mm % p == 0:
                raise UnsupportedShape(f"pole order {mm} divisible by p; reduce f first")
            has_pole = True
            out.append(("artin_schreier", pl, t * (pe - 1) * (mm + 1)))
        if not has_pole:
            raise UnsupportedShape("Artin-Schreier function without poles")
    return tuple(out)


def _square_up_to_constant(F, a):
    if not a:
        return True
    lc, facs = P.factor(F, a)
    return all(m % 2 == 0 for _, m in facs)


def _is_geometric_square(C, f):
    """Is f = lambda * g^2 with lambda in F_q^* and g in F_q(C)?

    Over an algebraic closure of F_q the two notions agree: Frobenius sends a
    square root g to +-g.  Clearing the denominator, (a + b y) c is integral,
    so any root has the form s + t y with s, t in F_q[x]."""
    F = C.ctx
    a, b, c = P.mul(F, list(f.a), list(f.c)), P.mul(F, list(f.b), list(f.c)), list(f.c)
    if C.is_pline or not b:
        if _square_up_to_constant(F, a):
            return True
        if C.is_pline:
            return False
        # a = lambda t^2 f0
        qt, rem = P.divmod_(F, a, list(C.f))
        return not rem and _square_up_to_constant(F, qt)
    # b = 2 lambda s t and a = lambda (s^2 + t^2 f0), since h = 0 in odd characteristic
    _, facs = P.factor(F, b)
    two = F.add(1, 1)
    for exps in product(*[range(m + 1) for _, m in facs]):
        t = [1]
        for (w, _), e in zip(facs, exps):
            t = P.mul(F, t, P.power(F, w, e))
        for lam in range(1, F.q):
            s, rem = P.divmod_(F, b, P.scale(F, F.mul(two, lam), t))
            if rem:
                continue
            rhs = P.add(F, P.mul(F, s, s), P.mul(F, P.mul(F, t, t), list(C.f)))
            if P.scale(F, lam, rhs) == a:
                return True
    return False


def _genus_from(C, r, pe, ram):
    two_g = 2 * C.genus - 2
    s1 = sum(pl.degree * e for st, pl, e in ram if st == "kummer")
    two_g = r * two_g + s1
    if pe > 1:
        s2 = sum(pl.degree * e for st, pl, e in ram if st == "artin_schreier")
        two_g = pe * two_g + s2
    if two_g % 2:
        raise InconsistentRamification("odd value of 2g - 2")
    return two_g // 2 + 1


def make_cover(C, f, r=1, pe=1, **meta):
    if gcd(r, C.ctx.p) != 1:
        raise UnsupportedShape("Kummer exponent must be prime to p")
    if _plog(pe, C.ctx.p) < 0:
        raise UnsupportedShape("Artin-Schreier exponent must be a power of p")
    ram = _ramification(C, f, r, pe)
    return CoverSpec(C, r, pe, f, ram, _genus_from(C, r, pe, ram), dict(meta))


def _plog(n, p):
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    return e if n == 1 else -1


def hurwitz_genus(B):
    g = _genus_from(B.base, B.r, B.pe, B.ramification)
    if g != B.expected_genus:
        raise InconsistentRamification(f"Hurwitz gives {g}, expected {B.expected_genus}")
    return g


# -- fiber counting ----------------------------------------------------------------

def _tth_roots(E, t, u):
    """#{s in E : s^t = u}, u nonzero."""
    if t == 1:
        return 1
    g = gcd(t, E.q - 1)
    return g if E.pow(u, (E.q - 1) // g) == 1 else 0


def _as_count(E, pe, c):
    """#{z in E : z^pe - z = c}."""
    e = _plog(pe, E.p)
    w = gcd(e, E.k)
    tr, s = 0, c
    for _ in range(E.k // w):
        tr = E.add(tr, s)
        s = E.pow(s, E.p**w)
    return E.p**w if tr == 0 else 0


def fiber_size(B, E, v, u):
    t = gcd(B.r, v)
    n = _tth_roots(E, t, u)
    if B.pe == 1 or n == 0:
        return n
    if v < 0:
        if (-v * (B.r // t)) % E.p == 0:
            raise UnsupportedShape("wild pole order divisible by p")
        return n
    return n * _as_count(E, B.pe, u if v == 0 else 0)


def fibers(B, m=1, budget=DEFAULT):
    """Yield (point, fiber size) over every point of the base over F_{q^m}."""
    C = B.base
    _check_budget(C.q, m, budget)
    E = base_change(C, m)[0]
    v, u = local_data(C, B.defining, m, None)
    yield None, fiber_size(B, E, v, u)
    for pt in affine_points(C, m, budget):
        v, u = local_data(C, B.defining, m, pt)
        yield pt, fiber_size(B, E, v, u)


def cover_count_points(B, m=1, budget=DEFAULT):
    return sum(n for _, n in fibers(B, m, budget))


def cover_l_polynomial(B, budget=DEFAULT, extra=True):
    """L-polynomial of B from fiber counts over F_{q^1..q^g}.

    With ``extra`` the count over F_{q^(g+1)} is compared with the prediction
    (when affordable), which catches a wrong genus."""
    g = B.expected_genus
    q = B.base.q
    if g > budget.cover_lpoly_genus or q**g > budget.field_size:
        raise BudgetExceeded(f"fiber-count L-polynomial of a genus-{g} cover over F_{q}")
    N = [cover_count_points(B, m, budget) for m in range(1, g + 1)]
    L = l_from_power_sums(q, g, [q**m + 1 - n for m, n in enumerate(N, 1)])
    if extra and q ** (g + 1) <= budget.field_size:
        pred = q ** (g + 1) + 1 - L.power_sums(g + 1)[g]
        got = cover_count_points(B, g + 1, budget)
        if pred != got:
            raise InconsistentRamification(
                f"count over F_q^{g + 1} is {got}, genus-{g} L-polynomial predicts {pred}")
    return L


# -- twists ------------------------------------------------------------------------

def twist(B):
    C, F = B.base, B.base.ctx
    if B.degree != 2:
        raise UnsupportedShape("twists are defined here for degree-2 covers")
    if B.r == 2:
        f = func_scale(C, F.least_nonsquare(), B.defining)
    else:
        f = func_add_const(C, F.least_trace_one(), B.defining)
    return replace(B, defining=f, meta={**B.meta, "twisted": not B.meta.get("twisted", False)})


def select_twist(B, budget=DEFAULT):
    """B or its quadratic twist, whichever has at least #C(F_q) points."""
    T = twist(B)
    nb, nt = cover_count_points(B, 1, budget), cover_count_points(T, 1, budget)
    nc = count_points(B.base, 1)
    if nb + nt != 2 * nc:
        raise InconsistentRamification(f"twist sum {nb} + {nt} != 2 * {nc}")
    return B if nb >= nc else T


# -- builders ----------------------------------------------------------------------

def _x_power(j):
    return tuple([0] * j + [1])


def build_as_cover(C, h, force_place=False, budget=DEFAULT):
    """Genus-h cover z^2 + z = f of a base over an even field.

    The default branch puts a pole of odd order m = 2h - 4g + 1 at the
    rational point at infinity.  ``force_place`` uses instead a function with
    a single simple pole at the least generic place of degree h - 2g + 1;
    imaginary models always have a rational point, so this branch exists to
    exercise the construction for bases without one."""
    F = C.ctx
    if not F.char2:
        raise UnsupportedShape("Artin-Schreier builder needs even q")
    g = C.genus
    if h < 4 * g:
        raise GenusTooSmall(f"h = {h} < 4g = {4 * g}")
    if not force_place:
        m = 2 * h - 4 * g + 1
        f = Func(_x_power(m)) if C.is_pline else Func((), _x_power(h - 3 * g))
        B = make_cover(C, f, 1, 2, branch="point", m=m)
    else:
        d = h - 2 * g + 1
        pl = next(iter(generic_places(C, d)), None)
        if pl is None:
            raise SearchBudgetExceeded(f"no generic place of degree {d}")
        f = _simple_pole_function(C, pl, budget)
        B = make_cover(C, f, 1, 2, branch="place", d=d, place=pl.render())
    if B.expected_genus != h:
        raise InconsistentRamification(f"constructed genus {B.expected_genus} != {h}")
    return B


def _mumford_of(C, places):
    """Semi-reduced (U, V) of a sum of distinct affine places (none conjugate)."""
    u, v = [1], []
    for pl in places:
        if u == [1]:
            u, v = list(pl.u), list(pl.v)
        else:
            u, v, dd = compose(C, u, v, list(pl.u), list(pl.v))
            if P.deg(dd) > 0:
                raise UnsupportedShape("conjugate places in a Riemann-Roch divisor")
    return u, v


def _vanishing_space(C, U, V, n):
    """Basis of {a + b y : pole order at infinity <= n, a + b V = 0 mod U}."""
    F, g = C.ctx, C.genus
    na = n // 2 + 1
    nb = max(0, (n - 2 * g - 1) // 2 + 1) if not C.is_pline else 0
    du = P.deg(U)
    cols = []
    for i in range(na):
        cols.append(P.mod(F, _x_power(i), U) if du > 0 else [])
    for j in range(nb):
        cols.append(P.mod(F, P.mul(F, list(_x_power(j)), V), U) if du > 0 else [])
    rows = [[(col[i] if i < len(col) else 0) for col in cols] for i in range(du)]
    out = []
    for vec in P.nullspace(F, rows, na + nb):
        out.append((P.trim(vec[:na]), P.trim(vec[na:])))
    return out


def riemann_roch(C, places, k=0):
    """Basis of L(sum(places) + k*inf) for distinct affine places and a point at infinity.

    F/U with U the Mumford polynomial of the places and F vanishing on their
    conjugates, with pole order at most k + 2 deg U at infinity."""
    F = C.ctx
    if C.is_pline:
        U = [1]
        for pl in places:
            U = P.mul(F, U, list(pl.u))
        n = k + P.deg(U)
        return [make_func(F, _x_power(i), (), U) for i in range(n + 1)]
    U, V = _mumford_of(C, places)
    Vbar = P.mod(F, P.neg(F, P.add(F, V, list(C.h))), U) if P.deg(U) > 0 else []
    n = k + 2 * P.deg(U)
    return [make_func(F, a, b, U) for a, b in _vanishing_space(C, U, Vbar, n)]


def _pole_at(C, f, pl):
    return any(q == pl and v < 0 for q, v in divisor_of(C, f))


def _simple_pole_function(C, pl, budget=DEFAULT):
    """A nonconstant f in L(P); its only pole is P (simple)."""
    for f in riemann_roch(C, [pl]):
        if not f.is_constant() and _pole_at(C, f, pl):
            return f
    raise SearchBudgetExceeded(f"L(P) is trivial for P = {pl.render()}")


def _collisions(C, d, budget):
    """Pairs (P, P') of generic degree-d places with equal class mod 2J.

    Places are scanned in canonical order; pairs appear ordered by the later
    place, then by the earlier one."""
    J = jacobian(C)
    seen = {}
    count = 0
    for pl in generic_places(C, d):
        count += 1
        if count > budget.place_search:
            break
        D = place_to_divisor(pl)
        lab = J.class_mod2(D)
        for prev, Dprev in seen.get(lab, []):
            yield prev, Dprev, pl, D
        seen.setdefault(lab, []).append((pl, D))
    _collisions.last_scanned = count


def _kummer_function(C, P1, D1, P2, D2):
    """f with div f = P1 - P2 + 2D on a hyperelliptic base, given [P1 - P2] in 2J."""
    F = C.ctx
    J = jacobian(C)
    X = J.doubles()[cantor_add(D1, negate(D2))]
    Einv = negate(X)
    v2bar = P.mod(F, P.neg(F, P.add(F, list(P2.v), list(C.h))), list(P2.u))
    parts = [(list(P2.u), v2bar)] + [(list(Einv.u), list(Einv.v))] * 2
    U, V, dpoly = list(P1.u), list(P1.v), [1]
    for u2, vv in parts:
        if u2 == [1]:
            continue
        U, V, dd = compose(C, U, V, u2, vv)
        dpoly = P.mul(F, dpoly, dd)
    space = _vanishing_space(C, U, V, P.deg(U))
    if len(space) != 1:
        raise InconsistentRamification(f"expected a 1-dimensional space, got {len(space)}")
    a, b = space[0]
    return make_func(F, P.mul(F, a, dpoly), P.mul(F, b, dpoly), list(P2.u))


def _odd_support(C, f):
    return [(pl, v) for pl, v in divisor_of(C, f) if v % 2]


def build_kummer_cover(C, h, budget=DEFAULT):
    """Genus-h double cover y^2 = f where f has odd order exactly at two degree-d places."""
    F = C.ctx
    if F.char2:
        raise UnsupportedShape("Kummer builder needs odd q")
    g = C.genus
    if h < 4 * g:
        raise GenusTooSmall(f"h = {h} < 4g = {4 * g}")
    d = h - 2 * g + 1
    if C.is_pline:
        it = P.irreducibles(F, d)
        u1, u2 = next(it), next(it)
        f = make_func(F, u1, (), u2)
        pls = (places_over(C, u1)[0], places_over(C, u2)[0])
    else:
        pair = next(_collisions(C, d, budget), None)
        if pair is None:
            J = jacobian(C)
            raise NoCollision(
                f"no collision among {_collisions.last_scanned} degree-{d} places",
                places=_collisions.last_scanned, classes=len(set(J.coset_labels().values())))
        P1, D1, P2, D2 = pair
        f = _kummer_function(C, P1, D1, P2, D2)
        pls = (P1, P2)
    odd = _odd_support(C, f)
    if sorted(pl.sort_key() for pl, _ in odd) != sorted(pl.sort_key() for pl in pls):
        raise InconsistentRamification("odd valuations outside the chosen pair")
    B = make_cover(C, f, 2, 1, d=d, places=[pl.render() for pl in pls])
    if B.expected_genus != h:
        raise InconsistentRamification(f"constructed genus {B.expected_genus} != {h}")
    return B


def _splits_everywhere(B):
    return all(n == 2 for _, n in fibers(B, 1))


def build_splitting_cover(C, h, budget=DEFAULT):
    """Like build_kummer_cover, but every rational place of C splits in B."""
    F = C.ctx
    if F.char2:
        raise UnsupportedShape("splitting-cover builder needs odd q")
    g = C.genus
    d = h - 2 * g + 1
    if d <= 1 or h < 4 * g:
        raise GenusTooSmall(f"need d = h - 2g + 1 > 1 and h >= 4g (h = {h}, g = {g})")
    tried = 0
    if C.is_pline:
        irr = []
        for u in P.irreducibles(F, d):
            for u1 in irr:
                tried += 1
                if tried > budget.function_search:
                    raise NoSplittingPair(f"search budget exhausted after {tried} pairs")
                f = make_func(F, u1, (), u)
                B = make_cover(C, f, 2, 1, d=d, places=[_poly_render(C, u1), _poly_render(C, u)])
                if _splits_everywhere(B):
                    return B
            irr.append(u)
        raise NoSplittingPair(f"no splitting pair among {tried} pairs of degree-{d} places")
    for P1, D1, P2, D2 in _collisions(C, d, budget):
        tried += 1
        if tried > budget.function_search:
            break
        f = _kummer_function(C, P1, D1, P2, D2)
        B = make_cover(C, f, 2, 1, d=d, places=[P1.render(), P2.render()])
        if _splits_everywhere(B):
            return B
    raise NoSplittingPair(f"no splitting pair among {tried} colliding pairs")


def _poly_render(C, u):
    return Place(C, P.deg(u), "line", tuple(u)).render()


def rational_places(C):
    """Degree-one places in canonical order, infinity first."""
    out = [infinity(C)]
    for x0 in range(C.q):
        out.extend(pl for pl in places_over(C, [C.ctx.neg(x0), 1]) if pl.degree == 1)
    return out


def build_nrank_cover(C, n, budget=DEFAULT):
    """Composite cover for n = p^e r: y^r = f, then z^(p^e) - z = f.

    f has simple poles at the d = min(#C(F_q), g) least rational places and at
    the least generic place Q of degree 2g + 1, and no other poles."""
    F = C.ctx
    g = C.genus
    if g < 1:
        raise GenusTooSmall("n-rank covers need a base of genus >= 1")
    p = F.p
    r, pe = n, 1
    while r % p == 0:
        r //= p
        pe *= p
    rat = rational_places(C)
    if not rat:
        raise NoRationalPoints("base has no rational points")
    d = min(len(rat), g)
    S = rat[:d]
    Q = next(iter(generic_places(C, 2 * g + 1)), None)
    if Q is None:
        raise SearchBudgetExceeded(f"no generic place of degree {2 * g + 1}")

    def with_poles(targets):
        # L(sum targets): the basis element with a pole at every target
        affine = [t for t in targets if t.kind != "infinity"]
        for f in riemann_roch(C, affine, len(targets) - len(affine)):
            dv = dict(divisor_of(C, f))
            if all(dv.get(t, 0) == -1 for t in targets):
                return f
        raise SearchBudgetExceeded("no function with the prescribed simple poles")

    total = Func()
    for pl in S:
        total = func_add(C, total, with_poles([pl, Q]))
    if not _pole_at(C, total, Q):
        total = func_add(C, total, with_poles([Q]))
    div = divisor_of(C, total)
    pole_set = sorted((pl.sort_key(), v) for pl, v in div if v < 0)
    expect = sorted([(pl.sort_key(), -1) for pl in S] + [(Q.sort_key(), -1)])
    if pole_set != expect:
        raise InconsistentRamification("poles of f differ from S + Q")
    B = make_cover(C, total, r, pe, d=d, Q=Q.render(), S=[pl.render() for pl in S])
    if not B.expected_genus < 7 * n * g:
        raise HypothesisNotMet(f"genus {B.expected_genus} is not below 7ng = {7 * n * g}")
    return B


def nrank_divisibility(B, budget=DEFAULT):
    """(r^(d-2), L_B(1)) for an n-rank cover; the first must divide the second."""
    L = cover_l_polynomial(B, budget)
    d = B.meta["d"]
    return B.r ** max(0, d - 2), L(1)


def build_cover(C, h, budget=DEFAULT):
    """The appropriate degree-2 builder for the characteristic of C."""
    if C.ctx.char2:
        return build_as_cover(C, h, budget=budget)
    return build_kummer_cover(C, h, budget=budget)
