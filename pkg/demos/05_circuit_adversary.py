"""
Small circuits lose to their own witnesses
==========================================

A depth-3 circuit whose input-reading OR gates test at most k literals
cannot distinguish a k-limit from the family it is a limit of. The
adversary picks the AND gate densest on the accepted good words, asks
a limit oracle for a bad word the gate family cannot separate, and the
circuit accepts it.
"""

from sigma2lab.blockwords import enumerate_good, is_bad, is_good
from sigma2lab.circuits import (
    adversary,
    demo_block_selector,
    demo_exact_good,
    densest_and_gate,
    eval_circuit,
)
from sigma2lab.entailment import bad_limit_via_entailment
from sigma2lab.flowers import bad_limit_via_flower

good9 = enumerate_good(9)

# the block selector accepts anything with an a in the first block;
# cheap, and wildly over-accepting
c = demo_block_selector(9)
print(f"block selector: {c.size} gates, top fan-in {c.k}")
gate, family = densest_and_gate(c, good9)
print(f"densest AND gate: {gate}, satisfied by {len(family)} good words")

result = adversary(c, good9, 1, bad_limit_via_entailment, lambda w: not is_good(w))
print(f"\nentailment oracle: {result.status}")
print(f"word {result.word}: bad={is_bad(result.word)}, accepted={eval_circuit(c, result.word)}")

# the flower oracle reaches a different counterexample, same conclusion
result = adversary(c, good9, 1, bad_limit_via_flower, lambda w: not is_good(w))
print(f"flower oracle:     {result.status}, word {result.word}")

# the exact recognizer has singleton gate families; singletons are
# tangled, the oracle returns nothing, and the round is inconclusive
exact = demo_exact_good(9)
result = adversary(exact, good9, 1, bad_limit_via_entailment, lambda w: not is_good(w))
print(f"\nexact recognizer ({exact.size} gates): {result.status}")
