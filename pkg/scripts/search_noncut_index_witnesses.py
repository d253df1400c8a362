"""Sample random maps on the canonical non-cutting pairs and tally indices.

For each crossing count 2m the index of a random indexable map should stay
within [0, 2]; this script reports which of the three values actually occur,
and with what frequency, over a seeded sample.

Usage: python scripts/search_noncut_index_witnesses.py [max_m] [maps_per_m] [seed]
"""
import random
import sys
from collections import Counter

from fpindex.errors import HasFixedPoint
from fpindex.jordan import canonical_noncut_pair
from fpindex.plmap import fixed_point_index, random_correspondence


def run(max_m: int, per_m: int, seed: int) -> int:
    rng = random.Random(seed)
    worst = 0
    for m in range(1, max_m + 1):
        first, second = canonical_noncut_pair(m)
        tally: Counter[int] = Counter()
        skipped = 0
        for _ in range(per_m):
            phi = random_correspondence(rng, rng.randrange(3, 11))
            try:
                tally[fixed_point_index(first, second, phi)] += 1
            except HasFixedPoint:
                skipped += 1
        witnessed = sorted(tally)
        print(f"2m={2 * m:2d}  witnessed={witnessed}  "
              f"counts={dict(sorted(tally.items()))}  skipped={skipped}")
        if witnessed and (witnessed[0] < 0 or witnessed[-1] > 2):
            print("  OUT OF RANGE - this should be impossible")
            worst = 1
    return worst


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    sys.exit(run(*(args + [6, 200, 0][len(args):])))
