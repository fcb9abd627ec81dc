"""Divisor classes on hyperelliptic Jacobians.

Cantor composition and reduction are written for the general model
y^2 + h(x) y = f(x), so one code path serves both characteristics.  Group
structure is found by listing every reduced Mumford pair and reading off the
l-primary torsion counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from sympy import factorint

from . import poly as P
from .config import DEFAULT
from .curves import _render_coeffs, l_polynomial
from .errors import BudgetExceeded, CountMismatch, NonGenericPlace


@dataclass(frozen=True)
class MumfordDivisor:
    curve: object
    u: tuple = (1,)
    v: tuple = ()

    @property
    def is_zero(self):
        return self.u == (1,)

    def sort_key(self):
        return (P.key(list(self.u)), P.key(list(self.v)))

    def render(self):
        F = self.curve.ctx
        return f"u={_render_coeffs(F, self.u)} v={_render_coeffs(F, self.v)}"

    def __add__(self, other):
        return cantor_add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return cantor_add(self, negate(other))

    def __rmul__(self, n):
        return scalar_mul(n, self)


def zero(C):
    return MumfordDivisor(C)


def is_valid(D):
    C, F = D.curve, D.curve.ctx
    u, v = list(D.u), list(D.v)
    if not u or u[-1] != 1 or len(v) >= len(u) and u != [1]:
        return False
    if P.deg(u) > C.genus:
        return False
    r = P.sub(F, P.add(F, P.mul(F, v, v), P.mul(F, list(C.h), v)), list(C.f))
    return not P.mod(F, r, u)


def compose(C, u1, v1, u2, v2):
    """Cantor composition without reduction.

    Returns (u, v, d) with [(u1,v1)] + [(u2,v2)] = [(u,v)] + div(d) where the
    effective parts satisfy D1 + D2 = (u, v) + (sum of Q + iota Q over roots of d)."""
    F = C.ctx
    f, h = list(C.f), list(C.h)
    d0, e1, e2 = P.xgcd(F, u1, u2)
    w = P.add(F, P.add(F, v1, v2), h)
    if w:
        d, c1, c2 = P.xgcd(F, d0, w)
    else:
        d, c1, c2 = d0, [1], []
    s1, s2, s3 = P.mul(F, c1, e1), P.mul(F, c1, e2), c2
    u = P.exact_div(F, P.mul(F, u1, u2), P.mul(F, d, d))
    t = P.add(F, P.mul(F, P.mul(F, s1, u1), v2), P.mul(F, P.mul(F, s2, u2), v1))
    t = P.add(F, t, P.mul(F, s3, P.add(F, P.mul(F, v1, v2), f)))
    v = P.mod(F, P.exact_div(F, t, d), u) if P.deg(u) > 0 else []
    return u, v, d


def reduce_divisor(C, u, v):
    F = C.ctx
    f, h = list(C.f), list(C.h)
    g = C.genus
    while P.deg(u) > g:
        num = P.sub(F, P.sub(F, f, P.mul(F, h, v)), P.mul(F, v, v))
        u = P.monic(F, P.exact_div(F, num, u))
        v = P.mod(F, P.neg(F, P.add(F, h, v)), u)
    u = P.monic(F, u)
    v = P.mod(F, v, u) if P.deg(u) > 0 else []
    return u, v


def cantor_add(D1, D2):
    C = D1.curve
    if D1.is_zero:
        return D2
    if D2.is_zero:
        return D1
    u, v, _ = compose(C, list(D1.u), list(D1.v), list(D2.u), list(D2.v))
    u, v = reduce_divisor(C, u, v)
    return MumfordDivisor(C, tuple(u), tuple(v))


def negate(D):
    C, F = D.curve, D.curve.ctx
    if D.is_zero:
        return D
    v = P.mod(F, P.neg(F, P.add(F, list(D.v), list(C.h))), list(D.u))
    return MumfordDivisor(C, D.u, tuple(v))


def scalar_mul(n, D):
    if n < 0:
        return scalar_mul(-n, negate(D))
    result, base = zero(D.curve), D
    while n:
        if n & 1:
            result = cantor_add(result, base)
        n >>= 1
        if n:
            base = cantor_add(base, base)
    return result


def from_semireduced(C, u, v):
    u, v = reduce_divisor(C, list(u), list(v))
    return MumfordDivisor(C, tuple(u), tuple(v))


# -- enumeration and structure ---------------------------------------------------

def enumerate_divisors(C):
    """Every reduced Mumford pair, in canonical order."""
    F = C.ctx
    out = [zero(C)]
    if C.is_pline:
        return out
    f, h = list(C.f), list(C.h)
    for n in range(1, C.genus + 1):
        for u in P.monics(F, n):
            rhs = P.mod(F, f, u)
            hm = P.mod(F, h, u)
            for vv in product(range(F.q), repeat=n):
                v = P.trim(vv)
                lhs = P.mod(F, P.add(F, P.mul(F, v, v), P.mul(F, hm, v)), u)
                if lhs == rhs:
                    out.append(MumfordDivisor(C, tuple(u), tuple(v)))
    out.sort(key=MumfordDivisor.sort_key)
    return out


@dataclass
class GroupStructure:
    order: int
    invariant_factors: list
    generators: list = field(default_factory=list)


def element_order(D, N, primes):
    o = N
    for r in primes:
        while o % r == 0 and scalar_mul(o // r, D).is_zero:
            o //= r
    return o


def invariant_factors_from_primary(parts):
    """parts: {prime: [exponents of the cyclic l-factors]} -> d_1 | d_2 | ..."""
    width = max((len(v) for v in parts.values()), default=0)
    out = [1] * width
    for r, exps in parts.items():
        exps = sorted(exps)
        for i, e in enumerate(exps):
            out[width - len(exps) + i] *= r**e
    return [d for d in out if d > 1]


class Jacobian:
    """The finite group J(F_q) of one curve, held in memory."""

    def __init__(self, C, budget=DEFAULT):
        self.curve = C
        self.L = l_polynomial(C) if not C.is_pline else None
        self.order = self.L(1) if self.L else 1
        if self.order > budget.jacobian_order:
            raise BudgetExceeded(f"|J| = {self.order} exceeds budget")
        self.elements = enumerate_divisors(C)
        if len(self.elements) != self.order:
            raise CountMismatch(f"enumerated {len(self.elements)} divisors, L(1) = {self.order}")
        self.index = {D: i for i, D in enumerate(self.elements)}
        self._structure = None
        self._labels = None
        self._halves = None

    def structure(self):
        if self._structure is None:
            self._structure = self._compute_structure()
        return self._structure

    def _compute_structure(self):
        N = self.order
        if N == 1:
            return GroupStructure(1, [], [])
        primes = sorted(factorint(N))
        orders = {D: element_order(D, N, primes) for D in self.elements}
        parts = {}
        for r, a in factorint(N).items():
            # #J[r^i] for i = 0..a
            sizes = [sum(1 for o in orders.values() if (r**i) % o == 0) for i in range(a + 1)]
            ranks = []
            for i in range(1, a + 1):
                c = sizes[i] // sizes[i - 1]
                ranks.append(c.bit_length() - 1 if r == 2 else _ilog(c, r))
            # ranks[i-1] = number of cyclic factors of order >= r^i
            exps = []
            for i in range(1, a + 1):
                nxt = ranks[i] if i < a else 0
                exps.extend([i] * (ranks[i - 1] - nxt))
            parts[r] = exps
        factors = invariant_factors_from_primary(parts)
        gens = self._generators(factors, orders)
        return GroupStructure(N, factors, gens)

    def _generators(self, factors, orders):
        H = {zero(self.curve)}
        gens = []
        for d in sorted(factors, reverse=True):
            for D in self.elements:
                if orders[D] != d:
                    continue
                multiples = []
                X = zero(self.curve)
                clash = False
                for _ in range(d - 1):
                    X = cantor_add(X, D)
                    if X in H:
                        clash = True
                        break
                    multiples.append(X)
                if clash:
                    continue
                newH = set(H)
                for M in multiples:
                    newH.update(cantor_add(M, T) for T in H)
                H = newH
                gens.append(D)
                break
            else:
                raise CountMismatch(f"no generator of order {d} independent of the previous ones")
        if len(H) != self.order:
            raise CountMismatch("generators do not span the group")
        # report in ascending invariant-factor order
        return list(reversed(gens))

    def n_rank(self, n):
        return sum(1 for d in self.structure().invariant_factors if d % n == 0)

    def doubles(self):
        """Map 2X -> least X, for every X."""
        if self._halves is None:
            halves = {}
            for X in self.elements:
                halves.setdefault(cantor_add(X, X), X)
            self._halves = halves
        return self._halves

    def two_torsion_count(self):
        return sum(1 for X in self.elements if cantor_add(X, X).is_zero)

    def coset_labels(self):
        """Label every element by the least member of its coset mod 2J."""
        if self._labels is None:
            two_j = list(self.doubles())
            labels = {}
            for X in self.elements:
                if X in labels:
                    continue
                for T in two_j:
                    labels[cantor_add(X, T)] = X
            self._labels = labels
        return self._labels

    def class_mod2(self, D):
        return self.coset_labels()[D]


def _ilog(c, r):
    e = 0
    while c > 1:
        c //= r
        e += 1
    return e


@lru_cache(maxsize=None)
def jacobian(C):
    return Jacobian(C)


def group_structure(C):
    return jacobian(C).structure()


def n_rank(C, n):
    return jacobian(C).n_rank(n)


def class_mod2(C, D):
    """Stable coset label of D in J/2J (the least coset member, rendered)."""
    return jacobian(C).class_mod2(D).render()


def place_to_divisor(place):
    """Class of P - deg(P)*inf for a generic place."""
    C = place.curve
    if C.is_pline:
        return zero(C)
    if place.kind != "split":
        raise NonGenericPlace(f"{place.kind} place has no generic Mumford form")
    return from_semireduced(C, place.u, place.v)
