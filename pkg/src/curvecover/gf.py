"""Arithmetic in F_p and F_{p^k}.

An element of F_{p^k} = F_p[t]/(modulus) is stored as the integer
``c0 + c1*p + ... + c_{k-1}*p^{k-1}`` where ``c0..c_{k-1}`` are its coefficients
(constant term first).  Elements of the prime field are therefore the
integers ``0..p-1`` in every extension, and the text form ``p^k:[c0,...]``
is just the digit expansion.  Contexts come from :func:`make_field`, which
caches them, so two contexts with equal ``(p, k)`` are the same object.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product

from sympy import factorint, isprime

from .config import DEFAULT
from .errors import BudgetExceeded, CtxMismatch, FieldDivisionByZero, NotPrime, ParseError


# -- prime-field polynomial helpers (only used to choose the modulus) --------

def _pmod_p(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _pmul_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _pgcd_p(a, b, p):
    while b:
        a, b = b, _pmod_p(a, b, p)
    return a


def _xpow_p(e, m, p):
    """x^e mod m over F_p by square-and-multiply."""
    result, base = [1], _pmod_p([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod_p(_pmul_p(result, base, p), m, p)
        base = _pmod_p(_pmul_p(base, base, p), m, p)
        e >>= 1
    return result


def _irreducible_p(m, p):
    """Rabin's test for a monic polynomial over F_p."""
    k = len(m) - 1
    if k == 1:
        return True
    if _xpow_p(p**k, m, p) != [0, 1]:
        return False
    for r in factorint(k):
        h = _xpow_p(p ** (k // r), m, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        if len(_pgcd_p(m, diff, p) if diff else m) != 1:
            return False
    return True


def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k, comparing
    coefficient vectors constant term first."""
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        if low[0] == 0:
            continue
        m = list(low) + [1]
        if _irreducible_p(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_{p^k}.  Operations act on integer-encoded elements."""

    def __init__(self, p, k, modulus, budget=DEFAULT):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.char2 = p == 2
        self._exp = self._log = self._add = None
        self._gen = None
        if k > 1 and self.q <= budget.table_size:
            self._build_tables()
        if k > 1 and p > 2 and self.q <= budget.add_table_size:
            q = self.q
            self._add = [[self._vadd(a, b) for b in range(q)] for a in range(q)]

    def __repr__(self):
        return f"FieldCtx({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- encoding ------------------------------------------------------------

    def digits(self, a):
        p, out = self.p, []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, coeffs):
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c % self.p
        return a

    # -- vector (reference) arithmetic --------------------------------------

    def _vadd(self, a, b):
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def _vmul(self, a, b):
        prod = _pmul_p(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_pmod_p(prod, self.modulus, self.p))

    def _build_tables(self):
        q, m = self.q, self.q - 1
        primes = list(factorint(m))
        for g in range(2, q):
            if all(self._vpow(g, m // r) != 1 for r in primes):
                break
        exp = [0] * (2 * m)
        log = [0] * q
        x = 1
        for i in range(m):
            exp[i] = x
            log[x] = i
            x = self._vmul(x, g)
        for i in range(m, 2 * m):
            exp[i] = exp[i - m]
        self._exp, self._log, self._gen = exp, log, g

    def _vpow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._vmul(r, a)
            a = self._vmul(a, a)
            e >>= 1
        return r

    # -- field operations ----------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.char2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._vadd(a, b)

    def neg(self, a):
        if self.char2 or a == 0:
            return a
        if self.k == 1:
            return self.p - a
        p, out, place = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((p - x) % p) * place
            place *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._vmul(a, b)

    def inv(self, a):
        if a == 0:
            raise FieldDivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._vpow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._vpow(a, e)

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** (times % self.k))

    def trace(self, a):
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.k):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def primitive(self):
        """Least primitive element under the integer encoding."""
        if self._gen is None:
            m = self.q - 1
            primes = list(factorint(m)) if m > 1 else []
            for g in range(1, self.q):
                if all(self.pow(g, m // r) != 1 for r in primes):
                    self._gen = g
                    break
        return self._gen

    def is_square(self, a):
        if a == 0 or self.char2:
            return True
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a):
        """Canonical square root (least encoding of the two) or None."""
        if a == 0:
            return 0
        if self.char2:
            return self.pow(a, self.q // 2)
        if not self.is_square(a):
            return None
        if self._log is not None:
            r = self._exp[self._log[a] // 2]
        else:
            r = self._tonelli(a)
        return min(r, self.neg(r))

    def _tonelli(self, a):
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = next(x for x in range(2, q) if not self.is_square(x))
        m, c, tt, r = s, self.pow(z, t), self.pow(a, t), self.pow(a, (t + 1) // 2)
        while tt != 1:
            i, x = 0, tt
            while x != 1:
                x, i = self.mul(x, x), i + 1
            b = self.pow(c, 2 ** (m - i - 1))
            m, c = i, self.mul(b, b)
            tt, r = self.mul(tt, c), self.mul(r, b)
        return r

    def least_nonsquare(self):
        if self.char2:
            raise ValueError("every element of a binary field is a square")
        return next(x for x in range(2, self.q) if not self.is_square(x))

    def least_trace_one(self):
        return next(x for x in range(1, self.q) if self.trace(x) == 1)

    def elements(self):
        return range(self.q)

    # -- text form -----------------------------------------------------------

    def render(self, a):
        return f"{self.p}^{self.k}:[{','.join(str(c) for c in self.digits(a))}]"

    def parse(self, text):
        m = re.fullmatch(r"\s*(\d+)\^(\d+):\[([\d,\s]*)\]\s*", text)
        if not m:
            raise ParseError(f"bad element text {text!r}")
        p, k = int(m.group(1)), int(m.group(2))
        if (p, k) != (self.p, self.k):
            raise CtxMismatch(f"element of {p}^{k} parsed in {self}")
        coeffs = [int(c) for c in m.group(3).split(",") if c.strip()]
        if len(coeffs) != k or any(not 0 <= c < p for c in coeffs):
            raise ParseError(f"bad coefficient vector in {text!r}")
        return self.from_digits(coeffs)

    def elem(self, value):
        """Wrap an encoded integer (or coefficient list) as a FieldElem."""
        if isinstance(value, (list, tuple)):
            value = self.from_digits(list(value) + [0] * (self.k - len(value)))
        return FieldElem(self, value)


@lru_cache(maxsize=None)
def _make_field(p, k):
    return FieldCtx(p, k, least_irreducible(p, k))


def make_field(p, k=1, budget=DEFAULT):
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if p**k > budget.field_size:
        raise BudgetExceeded(f"field of size {p}^{k} exceeds budget {budget.field_size}")
    return _make_field(p, k)


class FieldElem:
    """A field element bound to its context, with operator sugar."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self):
        return self.ctx.digits(self.value)

    def _other(self, y):
        if isinstance(y, FieldElem):
            if y.ctx is not self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {y.ctx}")
            return y.value
        return y % self.ctx.p

    def __add__(self, y):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(y)))

    def __sub__(self, y):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(y)))

    def __mul__(self, y):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(y)))

    def __truediv__(self, y):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(y)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    __radd__ = __add__
    __rmul__ = __mul__

    def inv(self):
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def frobenius(self):
        return FieldElem(self.ctx, self.ctx.frobenius(self.value))

    def __eq__(self, y):
        return isinstance(y, FieldElem) and y.ctx is self.ctx and y.value == self.value

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.value))

    def __repr__(self):
        return self.ctx.render(self.value)


def arith(op, x, y=None):
    """Dispatch one of add/sub/mul/inv/pow/frobenius on FieldElems."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x**y
    if op == "frobenius":
        return x.frobenius()
    raise ValueError(f"unknown op {op}")


def is_square_and_sqrt(x):
    r = x.ctx.sqrt(x.value)
    return (r is not None), (None if r is None else FieldElem(x.ctx, r))


def trace_absolute(x):
    return x.ctx.trace(x.value)


def parse_element(text):
    m = re.fullmatch(r"\s*(\d+)\^(\d+):", text[: text.find("[")] if "[" in text else text)
    if not m:
        raise ParseError(f"bad element text {text!r}")
    ctx = make_field(int(m.group(1)), int(m.group(2)))
    return FieldElem(ctx, ctx.parse(text))


@lru_cache(maxsize=None)
def embedding(small, big):
    """Images of every element of ``small`` inside ``big``.

    The generator t of ``small`` goes to the least (by encoding) root of its
    modulus lying in ``big``; the roots are searched in the subfield
    {0} U {w^(j(Q-1)/(q-1))} for a primitive w, which has only q elements.
    """
    if small.p != big.p or big.k % small.k:
        raise CtxMismatch(f"{small} does not embed in {big}")
    if small.k == 1:
        return tuple(range(small.p))
    w = big.primitive()
    step = big.pow(w, (big.q - 1) // (small.q - 1))
    sub = [0]
    x = 1
    for _ in range(small.q - 1):
        sub.append(x)
        x = big.mul(x, step)

    def ev(poly, t):
        acc = 0
        for c in reversed(poly):
            acc = big.add(big.mul(acc, t), c)
        return acc

    beta = min(s for s in sub if ev(small.modulus, s) == 0)
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], beta))
    out = []
    for a in range(small.q):
        acc = 0
        for c, bp in zip(small.digits(a), powers):
            if c:
                acc = big.add(acc, big.mul(c, bp))
        out.append(acc)
    return tuple(out)


def extension(ctx, m):
    """F_{q^m} for ctx = F_q, together with the embedding table."""
    big = make_field(ctx.p, ctx.k * m)
    return big, embedding(ctx, big)
