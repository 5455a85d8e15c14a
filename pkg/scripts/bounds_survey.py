"""Small-model bounds and decision times over random separated sentences.

Usage: python scripts/bounds_survey.py [COUNT] [SEED]
"""
import collections
import random
import sys
import time

from sepfol.bounds import compute_bounds, is_overflow
from sepfol.decide import decide_sf
from sepfol.generate import random_sf


def main(count: int = 100, seed: int = 0):
    rng = random.Random(seed)
    regimes = collections.Counter()
    verdicts = collections.Counter()
    bounds = []
    t0 = time.perf_counter()
    for _ in range(count):
        phi = random_sf(rng, max_alternations=2, equality=rng.random() < 0.3)
        b = compute_bounds(phi)
        regimes[b.regime] += 1
        bounds.append("Overflow" if is_overflow(b.domain_bound) else b.domain_bound)
        verdicts[decide_sf(phi, cap=4, structure_cap=10**6).name] += 1
    finite = sorted(x for x in bounds if x != "Overflow")
    print(f"sentences: {count}  seconds: {time.perf_counter() - t0:.1f}")
    print("regimes:", dict(sorted(regimes.items())))
    print("verdicts (size cap 4):", dict(sorted(verdicts.items())))
    if finite:
        print(f"finite bounds: min {finite[0]}  median {finite[len(finite) // 2]}  max {finite[-1]}")
    print("overflow:", bounds.count("Overflow"))


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
