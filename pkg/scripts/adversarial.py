"""Run the adversarial workloads and write one metrics file per workload."""

import argparse
import pathlib
import re

from nicepartition.bench import replay
from nicepartition.streams import generate

WORKLOADS = [
    "star:i=5,delete=1",
    "star:i=6",
    "tree_of_stars:k=5,j=23,rounds=3",
    "tree_of_stars:i=3,rounds=5",
    "hub_swing:",
    "hub_swing:pool=2000,climb=1500,swing=1200,cycles=4",
    "sliding_window:n=128,steps=20000,window=1500",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="metrics")
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--audit-every", type=int, default=0)
    ap.add_argument("workloads", nargs="*", default=WORKLOADS)
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for spec in args.workloads:
        name = re.sub(r"[^A-Za-z0-9]+", "_", spec).strip("_")
        with open(out_dir / f"{name}.jsonl", "w") as fh:
            rs, _ = replay(generate(spec, seed=args.seed), K=args.k,
                           audit_every=args.audit_every, out=fh)
        m = rs.maxima
        status = "ok" if rs.ok else f"FAILED: {rs.error or rs.violations[0]}"
        failed += not rs.ok
        print(f"{spec:55s} L={rs.L} updates={rs.updates:6d} max pivots={m['pivot_calls']:3d} "
              f"chain={m['max_chain']} mark repairs={m['mark_repairs']:5d} {status}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
