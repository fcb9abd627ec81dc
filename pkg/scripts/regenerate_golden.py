"""Rewrite oracle_golden.json from an exhaustive sweep (about 2 s)."""
import argparse
from pathlib import Path

from curvecover.oracle import golden

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "oracle_golden.json"))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    Path(args.out).write_text(golden(jobs=args.jobs))
    print(f"wrote {args.out}")
