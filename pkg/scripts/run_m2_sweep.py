"""Rule comparison on M2 elections; writes records, summary and model metrics CSVs.

    python3 scripts/run_m2_sweep.py --count 200 --m 10 --q 10 --seed 2024 --out results/m2
"""

import argparse
import csv
from pathlib import Path

from lineup.cli import run_experiment
from lineup.rules import RULE_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="M2", choices=["M1", "M2"])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--m", type=int, default=10)
    ap.add_argument("--q", type=int, default=10)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--rules", default=",".join(RULE_NAMES))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="results/m2")
    args = ap.parse_args()

    cfg = {
        "source": {"generator": {"model": args.model, "m": args.m, "q": args.q,
                                 "count": args.count, "seed": args.seed}},
        "rules": args.rules.split(","),
    }
    out = Path(args.out)
    code = run_experiment(cfg, out, jobs=args.jobs, deterministic=True)
    print(f"{'rule':22s} {'metric':28s} {'median':>9s} {'q1':>9s} {'q3':>9s}")
    for row in csv.DictReader((out / "summary.csv").open()):
        print(f"{row['rule']:22s} {row['metric']:28s} {float(row['median']):9.4f} "
              f"{float(row['q1']):9.4f} {float(row['q3']):9.4f}")
    raise SystemExit(code)


if __name__ == "__main__":
    main()
