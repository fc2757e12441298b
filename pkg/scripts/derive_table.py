"""Re-derive the rule-by-axiom verdict matrix and write witnesses.

    python3 scripts/derive_table.py --trials 10000 --seed 7 --out results/table
"""

import argparse
import json
from pathlib import Path

from lineup.rules import TABLE_RULES
from lineup.table import derive_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--size", type=int, default=5, help="max candidates and positions")
    ap.add_argument("--with-max-sum", action="store_true", help="add the egalitarian max-sum row")
    ap.add_argument("--out", default="results/table")
    args = ap.parse_args()

    rules = list(TABLE_RULES) + (["egalitarian-max-sum"] if args.with_max_sum else [])
    progress = lambda v: print(f"{v.rule:20s} {v.axiom:24s} {v.symbol:3s} {v.source or ''}", flush=True)
    table = derive_table(rules, trials=args.trials, seed=args.seed, m_max=args.size, q_max=args.size,
                         progress=progress)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "table.txt").write_text(table.render() + "\n", encoding="utf-8")
    cells = {f"{r}|{a}": {"symbol": v.symbol, "level": v.level, "source": v.source, "trials": v.trials,
                          "witness": v.witness} for (r, a), v in table.cells.items()}
    (out / "cells.json").write_text(json.dumps(cells, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print()
    print(table.render())
    diff = table.disagreements()
    if diff:
        print("\ncells differing from the reference table:")
        for r, a, got, ref in diff:
            print(f"  {r} / {a}: derived {got}, reference {ref}")


if __name__ == "__main__":
    main()
