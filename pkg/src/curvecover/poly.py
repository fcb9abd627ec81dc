"""Univariate polynomials over a FieldCtx, plus the small amount of linear
algebra the Riemann-Roch computations need.

A polynomial is a list of encoded field elements, constant term first, with
no trailing zeros (so the zero polynomial is ``[]``).  All functions take the
field as first argument and never mutate their inputs.
"""
from __future__ import annotations

from itertools import product

from sympy import factorint


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def key(a):
    """Canonical total order: degree first, then coefficients constant-first."""
    return (len(a), tuple(a))


def const(F, c):
    return [c] if c else []


def X(F):
    return [0, 1]


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return trim(out)


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    fm, fa = F.mul, F.add
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return trim(out)


def shift(a, n):
    return [0] * n + list(a) if a else []


def monic(F, a):
    if not a:
        return []
    return scale(F, F.inv(a[-1]), a)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    qt = [0] * max(0, len(a) - db)
    fm, fs = F.mul, F.sub
    while len(a) - 1 >= db and a:
        c = fm(a[-1], inv)
        s = len(a) - 1 - db
        qt[s] = c
        if c:
            for i, bi in enumerate(b):
                if bi:
                    a[s + i] = fs(a[s + i], fm(c, bi))
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return trim(qt), a


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    qt, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return qt


def gcd(F, a, b):
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def invmod(F, a, m):
    g, s, _ = xgcd(F, mod(F, a, m), m)
    if g != [1]:
        raise ZeroDivisionError("not invertible modulo m")
    return s


def evaluate(F, a, x, emb=None):
    """Horner evaluation; ``emb`` maps coefficients into the field of x."""
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), emb[c] if emb is not None else c)
    return acc


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        for _ in range((i - 1) % F.p):
            c = F.add(c, a[i])
        out.append(c if i % F.p else 0)
    return trim(out)


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    result, base = [1], mod(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return mod(F, result, m)


def power(F, a, e):
    result = [1]
    for _ in range(e):
        result = mul(F, result, a)
    return result


def map_coeffs(a, emb):
    return trim([emb[c] for c in a])


# -- enumeration -------------------------------------------------------------

def monics(F, d):
    """Monic polynomials of degree d in canonical order."""
    for low in product(range(F.q), repeat=d):
        yield list(low) + [1]


def polys_upto(F, d):
    """All polynomials of degree <= d (including 0) in canonical order."""
    yield []
    for n in range(0, d + 1):
        for low in product(range(F.q), repeat=n):
            for top in range(1, F.q):
                yield list(low) + [top]


def is_irreducible(F, a):
    """Rabin's irreducibility test."""
    n = deg(a)
    if n < 1:
        return False
    if n == 1:
        return True
    if a[-1] != 1:
        a = monic(F, a)
    if a[0] == 0:
        return False
    if F.q <= 64 and any(evaluate(F, a, t) == 0 for t in range(1, F.q)):
        return False
    x = [0, 1]
    if powmod(F, x, F.q**n, a) != mod(F, x, a):
        return False
    for r in factorint(n):
        h = sub(F, powmod(F, x, F.q ** (n // r), a), x)
        if gcd(F, a, h) != [1]:
            return False
    return True


def irreducibles(F, d):
    """Monic irreducibles of degree d in canonical order."""
    if d == 1:
        yield from monics(F, 1)
        return
    # the constant term is the most significant coordinate and must be nonzero
    for c0 in range(1, F.q):
        for mid in product(range(F.q), repeat=d - 1):
            u = [c0, *mid, 1]
            if is_irreducible(F, u):
                yield u


def mobius(n):
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n):
    return [e for e in range(1, n + 1) if n % e == 0]


def count_irreducibles(q, d):
    """Necklace count (1/d) sum mu(d/e) q^e."""
    return sum(mobius(d // e) * q**e for e in divisors(d)) // d


# -- factorization -----------------------------------------------------------

def _pth_root(F, a):
    """a(x) = b(x^p) with coefficients p-th powers; return b^(1/p)."""
    e = F.q // F.p
    return trim([F.pow(a[i], e) for i in range(0, len(a), F.p)])


def squarefree(F, a):
    """Squarefree decomposition: list of (factor, multiplicity), factors monic."""
    out = []
    a = monic(F, a)
    if deg(a) < 1:
        return out

    def rec(f, mult):
        i = 1
        df = derivative(F, f)
        if not df:
            for g, m in squarefree(F, _pth_root(F, f)):
                out.append((g, m * F.p * mult))
            return
        c = gcd(F, f, df)
        w = exact_div(F, f, c)
        while deg(w) > 0:
            y = gcd(F, w, c)
            z = exact_div(F, w, y)
            if deg(z) > 0:
                out.append((z, i * mult))
            i += 1
            w, c = y, exact_div(F, c, y)
        if deg(c) > 0:
            for g, m in squarefree(F, _pth_root(F, c)):
                out.append((g, m * F.p * mult))

    rec(a, 1)
    return out


def distinct_degree(F, a):
    """Split a squarefree monic polynomial into products of equal-degree irreducibles."""
    out = []
    x = [0, 1]
    h = mod(F, x, a)
    i = 0
    f = a
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, mod(F, x, f)))
        if deg(g) > 0:
            out.append((g, i))
            f = exact_div(F, f, g)
            h = mod(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _split_candidates(F, n):
    for t in polys_upto(F, n - 1):
        if deg(t) >= 1:
            yield t


def equal_degree(F, a, e):
    """Irreducible factors of a squarefree monic a whose factors all have degree e.

    Deterministic: splitting polynomials are tried in canonical order."""
    n = deg(a)
    if n == e:
        return [a]
    for t in _split_candidates(F, n):
        if F.char2:
            w, s = [], mod(F, t, a)
            for _ in range(F.k * e):
                w = add(F, w, s)
                s = mulmod(F, s, s, a)
        else:
            w = sub(F, powmod(F, t, (F.q**e - 1) // 2, a), [1])
        g = gcd(F, a, w)
        if 0 < deg(g) < n:
            return equal_degree(F, g, e) + equal_degree(F, exact_div(F, a, g), e)
    raise AssertionError("equal-degree split failed")  # pragma: no cover


def factor(F, a):
    """Return (leading coefficient, [(monic irreducible, multiplicity), ...])."""
    a = trim(a)
    if not a:
        raise ValueError("cannot factor zero")
    lc = a[-1]
    facs = {}
    for sq, m in squarefree(F, a):
        for g, e in distinct_degree(F, sq):
            for h in equal_degree(F, g, e):
                facs[tuple(h)] = facs.get(tuple(h), 0) + m
    items = sorted(((list(h), m) for h, m in facs.items()), key=lambda t: key(t[0]))
    return lc, items


def roots(F, a):
    """Distinct roots of a in F, ascending by encoding."""
    if not a:
        raise ValueError("zero polynomial")
    if F.q <= 4096:
        return [x for x in range(F.q) if evaluate(F, a, x) == 0]
    _, facs = factor(F, a)
    return sorted(F.neg(h[0]) for h, _ in facs if deg(h) == 1)


# -- linear algebra over F ----------------------------------------------------

def nullspace(F, rows, ncols):
    """Basis of {v : M v = 0}, in reduced form, as a list of vectors."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(m[i][fc])
        basis.append(v)
    return basis


def crt_pair(F, r1, m1, r2, m2):
    """x = r1 mod m1, x = r2 mod m2 for coprime m1, m2."""
    inv = invmod(F, m1, m2)
    t = mulmod(F, sub(F, r2, r1), inv, m2)
    return mod(F, add(F, r1, mul(F, m1, t)), mul(F, m1, m2))
