"""Worst-case work versus n on a fixed random workload shape.

Prints one row per n with L, the max and mean pivots per update, the
analytic ceiling, and max/L^3 (the fitted constant).  Mark repairs after
level jumps are listed separately since they are not bounded by the ceiling.
"""

import argparse
import csv
import sys
import time

from nicepartition.bench import replay
from nicepartition.streams import generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exponents", type=int, nargs="+", default=[6, 10, 14])
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--hubs", type=int, default=8)
    ap.add_argument("--beta", type=int, default=5)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args()

    rows = []
    for e in args.exponents:
        n = 2 ** e
        spec = f"random:n={n},steps={args.steps},m={4 * n},hubs={args.hubs}"
        t = time.perf_counter()
        rs, _ = replay(generate(spec, beta=args.beta, seed=args.seed), beta=args.beta, K=args.k)
        if rs.error:
            sys.exit(f"n={n}: {rs.error}")
        L = rs.L
        peak = rs.maxima["pivot_calls"]
        rows.append({
            "n": n, "L": L, "updates": rs.updates,
            "max_pivots": peak,
            "mean_pivots": round(rs.sums["pivot_calls"] / rs.updates, 4),
            "max_chain": rs.maxima["max_chain"],
            "max_mark_repairs": rs.maxima["mark_repairs"],
            "ceiling": rs.ceiling,
            "c_fit": round(peak / L ** 3, 4),
            "seconds": round(time.perf_counter() - t, 2),
        })

    cols = list(rows[0])
    print("  ".join(f"{c:>16}" for c in cols))
    for r in rows:
        print("  ".join(f"{r[c]:>16}" for c in cols))
    if len(rows) > 1:
        lo, hi = rows[0], rows[-1]
        growth = max(hi["max_pivots"], 1) / max(lo["max_pivots"], 1)
        print(f"growth {growth:.2f}, allowed (L ratio)^3 * 4 = {(hi['L'] / lo['L']) ** 3 * 4:.1f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    main()
