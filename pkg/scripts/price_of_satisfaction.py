"""Price of reasonable satisfaction: the epsilon family and random elections.

    python3 scripts/price_of_satisfaction.py --samples 500 --seed 1
"""

import argparse
import random
from fractions import Fraction

from lineup.axioms import price_of_reasonable_satisfaction
from lineup.fixtures import epsilon_election
from lineup.model import Election


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("epsilon   price      2/(4-2eps)")
    for k in (2, 4, 10, 100, 1000):
        eps = Fraction(1, k)
        print(f"1/{k:<6d} {str(price_of_reasonable_satisfaction(epsilon_election(eps))):10s} {2 / (4 - 2 * eps)}")

    rng = random.Random(args.seed)
    worst = None
    for _ in range(args.samples):
        q = rng.randint(2, 5)
        e = Election.from_matrix([[rng.randint(0, 9) for _ in range(q)] for _ in range(q + rng.randint(0, 1))])
        if all(x == 0 for row in e.scores for x in row):
            continue
        p = price_of_reasonable_satisfaction(e)
        if worst is None or p < worst[0]:
            worst = (p, e)
    print(f"\nlowest price over {args.samples} random elections: {worst[0]} ({float(worst[0]):.4f})")
    for c, row in zip(worst[1].candidates, worst[1].scores):
        print(f"  {c}: {', '.join(str(x) for x in row)}")


if __name__ == "__main__":
    main()
