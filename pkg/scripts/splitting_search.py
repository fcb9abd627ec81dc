"""Search for fully split double covers of P^1 over small odd fields.

For each q and d the script reports whether some pair of degree-d places
yields a cover in which every rational place splits, and the cover's #B."""
import argparse

from curvecover import covers
from curvecover.curves import projective_line
from curvecover.errors import NoSplittingPair
from curvecover.gf import make_field

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--dmax", type=int, default=4)
    args = ap.parse_args()
    for q in args.q:
        C = projective_line(make_field(q))
        for d in range(2, args.dmax + 1):
            try:
                B = covers.build_splitting_cover(C, d - 1)
                print(f"q={q} d={d}: #B={covers.cover_count_points(B, 1)} places={B.meta['places']}")
            except NoSplittingPair as exc:
                print(f"q={q} d={d}: none ({exc.detail})")
