"""Print the N_q(g) lower-bound table for one q, seeded with the golden exact values."""
import argparse
import json
from pathlib import Path

from curvecover.bounds import nq_lower_table, table_csv

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--gmax", type=int, default=20)
    args = ap.parse_args()
    exact = {e["g"]: e["nq"] for e in json.loads((ROOT / "oracle_golden.json").read_text())["entries"]
             if e["q"] == args.q}
    print(table_csv(nq_lower_table(args.q, args.gmax, exact=exact)))
