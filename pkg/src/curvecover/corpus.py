"""A fixed test corpus: for each of F_2, F_3, F_4, F_5 the projective line,
three elliptic curves and two genus-2 curves.

A few well-known models are pinned; the rest are the first smooth models in
canonical sweep order whose point count is new for that (field, genus).
"""
from __future__ import annotations

from functools import lru_cache

from . import poly as P
from .curves import count_points, parse_curve, projective_line, validate_and_genus
from .errors import SingularModel, UnsupportedShape
from .gf import make_field

FIELDS = ((2, 1), (3, 1), (2, 2), (5, 1))

PINNED = {
    (3, 1, 1): ["hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]",
                "hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]"],
    (5, 1, 1): ["hyperelliptic p=5 k=1 f=[0,1,0,1] h=[]"],
    (2, 1, 2): ["hyperelliptic p=2 k=1 f=[0,1,0,0,0,1] h=[1]"],
}

PER_GENUS = {1: 3, 2: 2}

# the 6-point curve over F_3 that attains n_3 = 4
EQUALITY_CURVE = "hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]"


def _sweep(F, g):
    hs = [[]] if not F.char2 else [h for h in P.polys_upto(F, g) if h]
    for h in hs:
        for f in P.monics(F, 2 * g + 1):
            try:
                yield validate_and_genus(F, f, h)
            except (SingularModel, UnsupportedShape):
                continue


def curves_of_genus(p, k, g):
    F = make_field(p, k)
    chosen = [parse_curve(s) for s in PINNED.get((p, k, g), [])]
    seen = {count_points(C, 1) for C in chosen}
    for C in _sweep(F, g):
        if len(chosen) >= PER_GENUS[g]:
            break
        n = count_points(C, 1)
        if n not in seen and C not in chosen:
            chosen.append(C)
            seen.add(n)
    return chosen


@lru_cache(maxsize=None)
def corpus():
    """Tuple of CurveModels, ordered by field, then genus."""
    out = []
    for p, k in FIELDS:
        out.append(projective_line(make_field(p, k)))
        for g in (1, 2):
            out.extend(curves_of_genus(p, k, g))
    return tuple(out)
