"""Build a double cover of every corpus curve for each h in [4g, 4g + 6] and
print one CSV row per cover: base, h, Hurwitz genus, #C, #B, twisted #B."""
import csv
import sys

from curvecover import covers
from curvecover.corpus import corpus
from curvecover.curves import count_points, render_curve


def main():
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["base", "h", "hurwitz_genus", "base_points", "cover_points", "selected_points"])
    for C in corpus():
        for h in range(4 * C.genus, 4 * C.genus + 7):
            B = covers.build_cover(C, h)
            w.writerow([render_curve(C), h, covers.hurwitz_genus(B), count_points(C, 1),
                        covers.cover_count_points(B, 1),
                        covers.cover_count_points(covers.select_twist(B), 1)])


if __name__ == "__main__":
    main()
