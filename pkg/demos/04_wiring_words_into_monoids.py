"""
From block words to the up-word problem
=======================================

Two bridges. The expansion rewrites a block word over {a,c} with
separator b's, landing in (ac*b+c)* exactly for good words. The wiring
goes further: it takes the failing equation pair (x, y) of that
language, factorizes the witness, and maps good words to products
equal to x and bad words to x y x.
"""

from sigma2lab.blockwords import enumerate_bad, enumerate_good, is_good, pack
from sigma2lab.languages import accepts, compile_pattern
from sigma2lab.monoids import recognize, up_word_accepts
from sigma2lab.reductions import (
    expansion,
    factorize_subword_witness,
    t_bad,
    t_good,
    wiring,
)

K = "(ac*b+c)*"
dfa = compile_pattern(K, ("a", "b", "c"))

print(f"expansion('abbbabbba') = {expansion('abbbabbba')}")
print(f"in {K}: {accepts(dfa, expansion('abbbabbba'))}")
print(f"expansion('abbbbbbab') = {expansion('abbbbbbab')}  (bad word)")
print(f"in {K}: {accepts(dfa, expansion('abbbbbbab'))}")

# the equation x <= x y x fails in K's monoid for x = h(ab), y = h(a);
# the witness embeds y into the word ab at position 1
rec = recognize(dfa)
fact = factorize_subword_witness(rec.morphism, "ab", (1,))
x = rec.morphism.eval("ab")
y = rec.morphism.eval("a")
print(f"\nfactors t={fact.t}, xs={fact.xs}, ys={fact.ys}")

m = rec.monoid
good_word = t_good(fact, 3, (1, 2, 3))
bad_word = t_bad(fact, 3, (1, 2, 3), 2)
print(f"t_good product = {m.product(good_word.elements)} (x = {x})")
print(f"t_bad  product = {m.product(bad_word.elements)} (xyx = {m.mul(m.mul(x, y), x)})")

# wiring letter by letter reproduces the builders on every block word
for w in list(enumerate_good(9))[:3] + list(enumerate_bad(9))[:2]:
    wired = wiring(fact, w)
    prod = m.product(wired.elements)
    print(
        f"{w} good={is_good(w)!s:5} pack={pack(w)} "
        f"product={prod} up-accept={up_word_accepts(rec, x, wired)}"
    )
