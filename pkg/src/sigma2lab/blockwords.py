"""Words of perfect-square length, read as r blocks of r letters.

Everything here is over the two-letter alphabet {a, b}. A word of
length n = r*r is good when every block carries exactly one a, and bad
when exactly one block is all b and every other block carries exactly
one a. Good and bad words pack into tuples over {1..r} with None for
the empty block, and that packed view is where the combinatorial
arguments live.

A word u is a k-limit of a family F when no k positions can tell u
apart from all of F at once: for every set P of at most k positions
some member of F agrees with u on P. Limits are what break small
circuits; the laboratory's other modules construct them.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb, isqrt

from .errors import NonSquareLengthError, PackError, SearchBudgetError

A = "a"
B = "b"

Packed = tuple  # of int | None, one entry per block

K_LIMIT_WORK_LIMIT = 10**6


def block_count(n: int) -> int:
    """The block size and count r for a length n = r*r word."""
    r = isqrt(n)
    if r * r != n or n <= 0:
        raise NonSquareLengthError(f"length {n} is not a positive perfect square")
    return r


def check_block_word(w: str) -> int:
    """Validate letters and length; return r."""
    r = block_count(len(w))
    for i, sym in enumerate(w):
        if sym not in (A, B):
            raise PackError(f"letter {sym!r} at position {i + 1} is not a or b")
    return r


def blocks(w: str) -> list[str]:
    r = check_block_word(w)
    return [w[i * r : (i + 1) * r] for i in range(r)]


def is_good(w: str) -> bool:
    return all(bl.count(A) == 1 for bl in blocks(w))


def is_bad(w: str) -> bool:
    counts = [bl.count(A) for bl in blocks(w)]
    return counts.count(0) == 1 and all(c in (0, 1) for c in counts)


def pack(w: str) -> Packed:
    """Positions of the a in each block, None for an all-b block.

    Defined for words with at most one a per block; two a's in a block
    have no packed form and raise PackError.
    """
    out = []
    for idx, bl in enumerate(blocks(w)):
        c = bl.count(A)
        if c > 1:
            raise PackError(f"block {idx + 1} has {c} a's; at most one allowed")
        out.append(bl.index(A) + 1 if c else None)
    return tuple(out)


def unpack(packed: Packed) -> str:
    """Inverse of pack; the packed tuple fixes r."""
    r = len(packed)
    out = []
    for idx, v in enumerate(packed):
        if v is None:
            out.append(B * r)
        elif isinstance(v, int) and 1 <= v <= r:
            out.append(B * (v - 1) + A + B * (r - v))
        else:
            raise PackError(f"entry {v!r} at block {idx + 1} is not None or in 1..{r}")
    return "".join(out)


def packed_to_str(packed: Packed) -> str:
    return ",".join("_" if v is None else str(v) for v in packed)


def packed_from_str(text: str) -> Packed:
    parts = text.split(",") if text else []
    out = []
    for part in parts:
        part = part.strip()
        if part == "_":
            out.append(None)
        elif part.isdigit() and int(part) >= 1:
            out.append(int(part))
        else:
            raise PackError(f"entry {part!r} is not '_' or a positive integer")
    packed = tuple(out)
    unpack(packed)  # range check against r = len(packed)
    return packed


def tau(w: str) -> frozenset[int]:
    """1-indexed positions carrying an a."""
    check_block_word(w)
    return frozenset(i + 1 for i, sym in enumerate(w) if sym == A)


def word_from_positions(n: int, positions) -> str:
    """The length-n word with a exactly on the given 1-indexed positions."""
    block_count(n)
    pos = set(positions)
    if not all(isinstance(p, int) and 1 <= p <= n for p in pos):
        raise PackError(f"positions must be integers in 1..{n}")
    return "".join(A if i + 1 in pos else B for i in range(n))


def enumerate_good(n: int) -> list[str]:
    """All good words of length n in lexicographic order (a < b)."""
    r = block_count(n)
    return [unpack(p) for p in product(range(1, r + 1), repeat=r)]


def enumerate_bad(n: int) -> list[str]:
    """All bad words of length n in lexicographic order."""
    r = block_count(n)
    out = []
    for empty in range(r):
        for rest in product(range(1, r + 1), repeat=r - 1):
            packed = rest[:empty] + (None,) + rest[empty:]
            out.append(unpack(packed))
    return sorted(out)


def agree_on(u: str, w: str, positions) -> bool:
    return all(u[p - 1] == w[p - 1] for p in positions)


def k_limit_counterexample(
    u: str, family, k: int
) -> tuple[int, ...] | None:
    """The first position set of size min(k, n) no member matches, or None.

    Position sets are scanned in lexicographic order, so the reported
    counterexample is stable. Agreement on a set implies agreement on
    its subsets, so only maximal sets need checking.
    """
    if k < 0:
        raise PackError("k must be nonnegative")
    fam = list(family)
    n = len(u)
    for w in fam:
        if len(w) != n:
            raise PackError("family words must have the same length as u")
    size = min(k, n)
    if comb(n, size) * max(len(fam), 1) > K_LIMIT_WORK_LIMIT:
        raise SearchBudgetError(
            f"limit check over {comb(n, size)} position sets is beyond desk scale"
        )
    for ps in combinations(range(1, n + 1), size):
        if not any(agree_on(u, w, ps) for w in fam):
            return ps
    return None


def is_k_limit(u: str, family, k: int) -> bool:
    """Does every k-position probe of u match some member of the family?

    Note an empty family has no limits (for n, k >= 1), and any member
    of the family is trivially a limit of it.
    """
    return k_limit_counterexample(u, family, k) is None
