"""Bridges between block words, ordinary languages, and monoid words.

The expansion turns the good/bad distinction into membership in a fixed
regular language: each block is rewritten over {a, c} and closed with a
separator b, so a block is well formed exactly when it matches ac*b
with leading c's.

The other direction starts from a failing equation pair (x, y) with a
witness word and marked positions, factorizes the witness, and builds
words over monoid-element symbols. Good words wire to products equal to
x, bad words to x y x, so any device separating the two wired images is
separating good from bad. Deleting the x-slot of every segment turns
each x-carrying word into the same y-word, which is the subword step
the wiring leans on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .blockwords import A, B, block_count
from .errors import PackError, PreconditionError
from .monoids import Morphism

SEPARATOR = "b"
FILLER = "c"
MARK = "a"


def expansion(w: str) -> str:
    """Rewrite b to c and close every block with a separator b.

    A word of length r*r maps to one of length r*(r+1) over {a, b, c},
    and the image lies in (ac*b+c)* exactly when the source is good.
    """
    r = block_count(len(w))
    out = []
    for idx in range(r):
        block = w[idx * r : (idx + 1) * r]
        for sym in block:
            if sym == A:
                out.append(MARK)
            elif sym == B:
                out.append(FILLER)
            else:
                raise PackError(f"letter {sym!r} in block {idx + 1} is not a or b")
        out.append(SEPARATOR)
    return "".join(out)


# ---------------------------------------------------------------------------
# monoid words


@dataclass(frozen=True)
class MonoidWord:
    """A word over the element symbols e0, e1, ... of a fixed monoid."""

    elements: tuple[int, ...]

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(f"e{e}" for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __add__(self, other: "MonoidWord") -> "MonoidWord":
        return MonoidWord(self.elements + other.elements)


def monoid_word_to_json(w: MonoidWord, monoid_ref: str) -> str:
    """monoid_ref names the monoid the indices refer to, e.g. its regex."""
    return json.dumps(
        {"monoid_ref": monoid_ref, "elements": list(w.elements)},
        sort_keys=True,
        indent=2,
    )


def monoid_word_from_json(text: str) -> tuple[MonoidWord, str]:
    payload = json.loads(text)
    elements = payload["elements"]
    ref = payload["monoid_ref"]
    if not all(isinstance(e, int) and e >= 0 for e in elements):
        raise PackError("elements must be nonnegative integers")
    if not isinstance(ref, str):
        raise PackError("monoid_ref must be a string")
    return MonoidWord(tuple(elements)), ref


# ---------------------------------------------------------------------------
# factorizing a subword witness


@dataclass(frozen=True)
class Factorization:
    """h(word) written as x_1 y_1 x_2 y_2 ... x_t y_t.

    The y_j are the images of the marked letters, the x_j the images of
    the gaps before them; a nonempty trailing gap contributes a final
    pair with y = identity. Dropping every x_j leaves exactly the image
    of the marked subword.
    """

    t: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]


def factorize_subword_witness(
    morphism: Morphism, word, positions
) -> Factorization:
    """Split a witness word at its marked positions and evaluate the parts."""
    w = list(word)
    pos = list(positions)
    if pos != sorted(set(pos)) or any(not 1 <= p <= len(w) for p in pos):
        raise PreconditionError(
            f"positions {positions!r} must be strictly increasing within the word"
        )
    ident = morphism.monoid.identity
    xs: list[int] = []
    ys: list[int] = []
    prev = 0
    for p in pos:
        xs.append(morphism.eval(w[prev : p - 1]))
        ys.append(morphism.image(w[p - 1]))
        prev = p
    trailing = w[prev:]
    if trailing or not pos:
        xs.append(morphism.eval(trailing))
        ys.append(ident)
    return Factorization(t=len(xs), xs=tuple(xs), ys=tuple(ys))


# ---------------------------------------------------------------------------
# the wired words


def build_x_i(fact: Factorization, r: int, i: int, identity: int = 0) -> MonoidWord:
    """The i-slot carrier: per factor j, segment 1^(i-1) x_j 1^(r-i) y_j.

    Every build_x_i evaluates to the same product x regardless of i;
    the slot only fixes where the x_j letters sit.
    """
    if not 1 <= i <= r:
        raise PreconditionError(f"slot {i} out of range 1..{r}")
    elements: list[int] = []
    for x_j, y_j in zip(fact.xs, fact.ys):
        elements.extend([identity] * (i - 1))
        elements.append(x_j)
        elements.extend([identity] * (r - i))
        elements.append(y_j)
    return MonoidWord(tuple(elements))


def build_y(fact: Factorization, r: int, identity: int = 0) -> MonoidWord:
    """The x-free variant: per factor j, segment 1^r y_j."""
    elements: list[int] = []
    for y_j in fact.ys:
        elements.extend([identity] * r)
        elements.append(y_j)
    return MonoidWord(tuple(elements))


def delete_x_letters(word: MonoidWord, r: int, i: int, identity: int = 0) -> MonoidWord:
    """Blank the x slot of every segment; build_x_i collapses to build_y.

    Deletion is positional: the letter at offset i of each length r+1
    segment is replaced by the identity, whatever it is.
    """
    if len(word.elements) % (r + 1) != 0:
        raise PreconditionError(
            f"length {len(word.elements)} is not divisible by the segment size {r + 1}"
        )
    if not 1 <= i <= r:
        raise PreconditionError(f"slot {i} out of range 1..{r}")
    return MonoidWord(
        tuple(
            identity if idx % (r + 1) == i - 1 else e
            for idx, e in enumerate(word.elements)
        )
    )


def t_good(fact: Factorization, r: int, indices) -> MonoidWord:
    """x-carriers for every block, sandwiched: evaluates to x itself."""
    idx = list(indices)
    if len(idx) != r or any(not (isinstance(i, int) and 1 <= i <= r) for i in idx):
        raise PreconditionError(f"need {r} slot indices in 1..{r}, got {indices!r}")
    word = build_x_i(fact, r, 1)
    for i in idx:
        word = word + build_x_i(fact, r, i)
    return word + build_x_i(fact, r, 1)


def t_bad(fact: Factorization, r: int, indices, j: int) -> MonoidWord:
    """Like t_good but block j carries no x: evaluates to x y x."""
    idx = list(indices)
    if len(idx) != r:
        raise PreconditionError(f"need {r} slot entries, got {indices!r}")
    if not 1 <= j <= r:
        raise PreconditionError(f"block {j} out of range 1..{r}")
    word = build_x_i(fact, r, 1)
    for pos, i in enumerate(idx, start=1):
        if pos == j:
            word = word + build_y(fact, r)
        else:
            if not (isinstance(i, int) and 1 <= i <= r):
                raise PreconditionError(f"slot {i!r} at block {pos} out of range 1..{r}")
            word = word + build_x_i(fact, r, i)
    return word + build_x_i(fact, r, 1)


def wiring(fact: Factorization, w: str) -> MonoidWord:
    """Wire a block word letter by letter: b to identity, a to the x slot.

    Each block is replicated once per factor with its y_j appended, and
    the whole is sandwiched between two first-slot carriers. A good
    word wires to a product equal to x, a bad word to x y x; the
    builders t_good and t_bad reproduce these words slot for slot.
    """
    r = block_count(len(w))
    ident = 0
    parts: list[int] = []
    parts.extend(build_x_i(fact, r, 1).elements)
    for b in range(r):
        block = w[b * r : (b + 1) * r]
        for x_j, y_j in zip(fact.xs, fact.ys):
            for sym in block:
                if sym == A:
                    parts.append(x_j)
                elif sym == B:
                    parts.append(ident)
                else:
                    raise PackError(f"letter {sym!r} is not a or b")
            parts.append(y_j)
    parts.extend(build_x_i(fact, r, 1).elements)
    return MonoidWord(tuple(parts))


# ---------------------------------------------------------------------------
# positional annotation


def p_annotate(w, moduli) -> tuple:
    """Attach to every position the moduli that divide it (1-indexed).

    The result is a word over symbol/divisor-set pairs, the alphabet a
    layered logic sees when modular predicates join the order.
    """
    mods = sorted(set(moduli))
    if not mods:
        raise PreconditionError("moduli must be nonempty")
    if not all(isinstance(p, int) and p >= 1 for p in mods):
        raise PreconditionError(f"moduli must be positive integers, got {moduli!r}")
    return tuple(
        (sym, tuple(p for p in mods if (idx + 1) % p == 0))
        for idx, sym in enumerate(w)
    )
