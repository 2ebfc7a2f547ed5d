"""
Words that a family cannot tell apart from itself
=================================================

A word u is a k-limit of a family F when every k positions of u are
matched by some member of F. Limits are found two ways here: by brute
enumeration, and constructively through flowers in the families'
position sets.
"""

import random

from sigma2lab.blockwords import (
    enumerate_good,
    is_k_limit,
    k_limit_counterexample,
    tau,
)
from sigma2lab.flowers import bad_limit_via_flower, find_flower, verify_flower

good9 = enumerate_good(9)
print(f"good words of length 9: {len(good9)} (one a per 3-block)")

# the all-b word agrees with some good word on any single position
print(f"is bbbbbbbbb a 1-limit of good9? {is_k_limit('bbbbbbbbb', good9, 1)}")

# against a single word the check fails and names the positions
ce = k_limit_counterexample("baba", ["abab"], 1)
print(f"baba vs {{abab}}: unmatched position set {ce}")

# position sets of good words carry flowers: petals whose parts outside
# the shared core are pairwise disjoint, so k positions cannot block k+1 petals
sets = [tau(w) for w in good9]
fl = find_flower(sets, 2)
print(f"\n2-petal flower: core {sorted(fl.core)}, petals {[sorted(p) for p in fl.petals]}")
print(f"brute-force flower property: {verify_flower(fl, sets, 2)}")

# the flower core, written back as a word, is a verified non-good limit
lim = bad_limit_via_flower(good9, 1)
print(f"flower limit of good9 at k=1: {lim.word}")

# the same pipeline at n=16, k=2, on a random subfamily
good16 = enumerate_good(16)
rng = random.Random(0)
fam = sorted(rng.sample(good16, 40))
lim = bad_limit_via_flower(fam, 2)
print(f"\nsampled |F|=40 in good16, k=2: limit {lim.word}")
print(f"core {sorted(lim.flower.core)}, verified {is_k_limit(lim.word, fam, 2)}")
