"""Wall-clock of the exact OWA search on generated elections.

    python3 scripts/owa_timing.py --sizes 6 8 10 --count 20
"""

import argparse
import statistics
import time

from lineup.datagen import GenSpec, generate
from lineup.matching import OwaVector, owa_optimize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    for n in args.sizes:
        elections = generate(GenSpec("M2", n, n, args.count, args.seed))
        for name in ("harmonic", "inverse_harmonic"):
            times = []
            for e in elections:
                t = time.perf_counter()
                owa_optimize(e, getattr(OwaVector, name)(n))
                times.append(time.perf_counter() - t)
            print(f"n={n:3d} {name:17s} median {statistics.median(times) * 1000:8.1f} ms  "
                  f"max {max(times) * 1000:8.1f} ms")


if __name__ == "__main__":
    main()
