"""Entailment between packed constraints, tangled families, encodings.

A packed family Phi lists good words as tuples over {1..r}. A pair
(p, c) constrains a member to carry content c at position p. A set S of
pairs with distinct positions entails an i-set D (pairs sharing
position i, distinct contents) when every member agreeing with all of S
agrees with at least one pair of D.

The family is k-tangled when for every member nu and every position i
some k pairs of nu away from i entail an i-set of at most k pairs. That
always pins down nu's own pair at i, which is what makes tangled
families compressible: each member is reconstructed from a few freely
given positions plus one small digit per derived position, so tangled
families are small. A family that is not tangled instead hands us a
member nu and a position i such that emptying nu's block i produces a
bad word no k positions can separate from the family. Every family
falls on one side or the other; that is the dichotomy the laboratory
runs end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .blockwords import (
    Packed,
    block_count,
    is_bad,
    is_good,
    is_k_limit,
    pack,
    unpack,
)
from .errors import (
    DegeneracyError,
    MalformedPairSetError,
    NotTangledError,
    PackError,
    PreconditionError,
    SearchBudgetError,
    VerificationError,
)

Pair = tuple[int, int]  # (position, content), both 1-indexed


@dataclass(frozen=True)
class LabConfig:
    """Budgets for the exhaustive searches; raise consciously, not by default."""

    max_r: int = 5
    max_k: int = 2


DEFAULT_CONFIG = LabConfig()


def pack_family(words) -> tuple[list[Packed], int]:
    """Distinct packed members in lexicographic order, plus the block size."""
    ws = list(words)
    if not ws:
        raise PreconditionError("family is empty; block size undetermined")
    r = block_count(len(ws[0]))
    for w in ws:
        if len(w) != len(ws[0]):
            raise PreconditionError(f"family member {w!r} has mismatched length")
        if not is_good(w):
            raise PreconditionError(f"family member {w!r} is not good")
    return sorted({pack(w) for w in ws}), r


def _check_pairs(S, r: int | None) -> tuple[Pair, ...]:
    out = []
    for item in S:
        p, c = item
        if not (isinstance(p, int) and isinstance(c, int) and p >= 1 and c >= 1):
            raise MalformedPairSetError(f"pair {item!r} is not two positive integers")
        if r is not None and (p > r or c > r):
            raise MalformedPairSetError(f"pair {item!r} is out of range for r={r}")
        out.append((p, c))
    out.sort()
    positions = [p for p, _ in out]
    if len(set(positions)) != len(positions):
        raise MalformedPairSetError("constraint set repeats a position")
    return tuple(out)


def _check_i_set(D, r: int | None) -> tuple[Pair, ...]:
    pairs = []
    for item in D:
        p, c = item
        if not (isinstance(p, int) and isinstance(c, int) and p >= 1 and c >= 1):
            raise MalformedPairSetError(f"pair {item!r} is not two positive integers")
        if r is not None and (p > r or c > r):
            raise MalformedPairSetError(f"pair {item!r} is out of range for r={r}")
        pairs.append((p, c))
    if not pairs:
        raise MalformedPairSetError("an i-set must be nonempty")
    if len({p for p, _ in pairs}) != 1:
        raise MalformedPairSetError("an i-set must keep to a single position")
    if len({c for _, c in pairs}) != len(pairs):
        raise MalformedPairSetError("an i-set must not repeat contents")
    return tuple(sorted(pairs))


def entails(S, D, Phi) -> bool:
    """Does every member satisfying all of S satisfy some pair of D?"""
    members = list(Phi)
    r = len(members[0]) if members else None
    S = _check_pairs(S, r)
    D = _check_i_set(D, r)
    for mu in members:
        if all(mu[p - 1] == c for p, c in S):
            if not any(mu[p - 1] == c for p, c in D):
                return False
    return True


def find_entailment(Phi, r: int, k: int, available, i: int):
    """Lex-first (S, D) with S drawn from available pairs, or None.

    S runs over k-subsets of the available pairs away from position i,
    ordered by position tuple; D runs over i-sets by size then contents.
    The search only consults Phi and its arguments, so an encoder that
    knows a member and a decoder that does not stay in lockstep.
    """
    pool = sorted((p, c) for p, c in available if p != i)
    d_candidates = [
        tuple((i, c) for c in cs)
        for size in range(1, k + 1)
        for cs in combinations(range(1, r + 1), size)
    ]
    for S in combinations(pool, k):
        for D in d_candidates:
            if entails(S, D, Phi):
                return S, D
    return None


def _pairs_of(mu: Packed) -> tuple[Pair, ...]:
    return tuple((p, mu[p - 1]) for p in range(1, len(mu) + 1))


def _guard(r: int, k: int, config: LabConfig) -> None:
    if k < 1:
        raise DegeneracyError("k must be at least 1")
    if k > r - 1:
        raise DegeneracyError(
            f"k={k} needs k constrained positions besides i, but r-1={r - 1}"
        )
    if r > config.max_r or k > config.max_k:
        raise SearchBudgetError(
            f"r={r}, k={k} exceeds the configured budget "
            f"(max_r={config.max_r}, max_k={config.max_k})"
        )


@dataclass(frozen=True)
class TangledReport:
    tangled: bool
    r: int
    k: int
    family_size: int
    witness: tuple[Packed, int] | None
    certificates: dict = field(hash=False, repr=False, default_factory=dict)


def is_tangled(family, k: int, config: LabConfig = DEFAULT_CONFIG) -> TangledReport:
    """Decide tangledness; the witness on failure is the lex-first (nu, i).

    Certificates for every (member, position) examined before the
    verdict are kept for inspection; on a tangled family that is all of
    them.
    """
    Phi, r = pack_family(family)
    _guard(r, k, config)
    certificates = {}
    for mu in Phi:
        pairs = _pairs_of(mu)
        for i in range(1, r + 1):
            found = find_entailment(Phi, r, k, pairs, i)
            if found is None:
                return TangledReport(
                    tangled=False,
                    r=r,
                    k=k,
                    family_size=len(Phi),
                    witness=(mu, i),
                    certificates=certificates,
                )
            S, D = found
            if (i, mu[i - 1]) not in D:
                raise VerificationError(
                    "entailed i-set misses the member's own pair"
                )
            certificates[(mu, i)] = found
    return TangledReport(
        tangled=True,
        r=r,
        k=k,
        family_size=len(Phi),
        witness=None,
        certificates=certificates,
    )


# ---------------------------------------------------------------------------
# the non-tangled side: a bad word the family cannot separate


@dataclass(frozen=True)
class EntailmentLimit:
    word: str
    packed: Packed  # source member with one block emptied
    source: Packed
    block: int


def bad_limit_via_entailment(
    family, k: int, config: LabConfig = DEFAULT_CONFIG
) -> EntailmentLimit | None:
    """The bad k-limit a non-tangled family must contain; None if tangled.

    The returned word is checked exhaustively against the definition of
    a limit before it is handed out.
    """
    report = is_tangled(family, k, config)
    if report.tangled:
        return None
    nu, i = report.witness
    mu = nu[: i - 1] + (None,) + nu[i:]
    u = unpack(mu)
    if not is_bad(u):
        raise VerificationError("emptying one block of a good word must yield a bad word")
    if not is_k_limit(u, list(family), k):
        raise VerificationError("entailment failure did not produce a k-limit")
    return EntailmentLimit(word=u, packed=mu, source=nu, block=i)


@dataclass(frozen=True)
class LimitConditionReport:
    ok: bool
    failed: str | None = None  # "P1" or "P2"
    detail: str | None = None
    counterexample: tuple | None = None


def check_packed_limit_conditions(
    mu: Packed, nu: Packed, Phi, k: int
) -> LimitConditionReport:
    """The two packed-level conditions that force unpack(mu) to be a limit.

    P1: nu belongs to Phi and mu is nu with exactly one block emptied.
    P2: for the emptied position i, whenever forbidden contents C (with
    nu's own content among them) and pinned positions P share a budget
    of k, some member avoids C at i while matching nu on P.

    Any probe of at most k word positions either misses block i's a or
    translates into such a (C, P), so P1 and P2 make unpack(mu) a
    k-limit of the unpacked family.
    """
    members = sorted(set(Phi))
    if not members:
        return LimitConditionReport(False, "P1", "family is empty")
    r = len(members[0])
    if len(mu) != r or len(nu) != r:
        return LimitConditionReport(False, "P1", "length mismatch with family")
    if nu not in set(members):
        return LimitConditionReport(False, "P1", "source member is not in the family")
    diffs = [i for i in range(1, r + 1) if mu[i - 1] != nu[i - 1]]
    if len(diffs) != 1:
        return LimitConditionReport(
            False, "P1", f"words differ at {len(diffs)} positions, need exactly 1"
        )
    i = diffs[0]
    if mu[i - 1] is not None:
        return LimitConditionReport(False, "P1", "the differing block must be emptied")

    nu_i = nu[i - 1]
    other_contents = [c for c in range(1, r + 1) if c != nu_i]
    other_positions = [p for p in range(1, r + 1) if p != i]
    for c_size in range(1, min(k, r) + 1):
        p_size = k - c_size
        for extra in combinations(other_contents, c_size - 1):
            C = frozenset((nu_i,) + extra)
            for P in combinations(other_positions, p_size):
                if not any(
                    lam[i - 1] not in C
                    and all(lam[p - 1] == nu[p - 1] for p in P)
                    for lam in members
                ):
                    return LimitConditionReport(
                        False,
                        "P2",
                        f"no member avoids contents {sorted(C)} at position {i} "
                        f"while matching the source on {list(P)}",
                        (tuple(sorted(C)), P),
                    )
    return LimitConditionReport(True)


# ---------------------------------------------------------------------------
# the tangled side: every member compresses


@dataclass(frozen=True)
class MemberCode:
    free_positions: tuple[int, ...]
    free_contents: tuple[int, ...]
    digits: tuple[int, ...]  # index into the sorted i-set, one per derived position


def encode_member(Phi, r: int, k: int, mu: Packed) -> MemberCode:
    """Compress one member of a tangled family.

    A first pass walks the positions, always deriving the smallest one
    not yet covered from a certificate over the member's full pair set;
    positions the certificate leans on that are not covered yet become
    free. Free positions can take at most k/(k+1) of the total, which
    is where the size bound on tangled families comes from.

    A second pass replays the derivation exactly as the decoder will:
    only pairs already specified may be used, and each step records
    which pair of the entailed i-set is the member's own.
    """
    free: set[int] = set()
    covered: set[int] = set()
    full_pairs = _pairs_of(mu)
    while len(covered) < r:
        i = min(p for p in range(1, r + 1) if p not in covered)
        found = find_entailment(Phi, r, k, full_pairs, i)
        if found is None:
            raise NotTangledError(
                f"member {mu} has no certificate at position {i}"
            )
        S, _ = found
        fresh = {p for p, _ in S if p not in covered}
        free |= fresh
        covered |= fresh | {i}
    if len(free) * (k + 1) > k * r:
        raise VerificationError(
            "free positions exceed the k/(k+1) share the walk guarantees"
        )

    specified = dict((p, mu[p - 1]) for p in sorted(free))
    digits: list[int] = []
    while len(specified) < r:
        for i in range(1, r + 1):
            if i in specified:
                continue
            found = find_entailment(Phi, r, k, specified.items(), i)
            if found is None:
                continue
            _, D = found
            own = (i, mu[i - 1])
            if own not in D:
                raise VerificationError("derived i-set misses the member's own pair")
            digits.append(sorted(D).index(own))
            specified[i] = mu[i - 1]
            break
        else:
            raise VerificationError("derivation stalled although the walk succeeded")
    return MemberCode(
        free_positions=tuple(sorted(free)),
        free_contents=tuple(mu[p - 1] for p in sorted(free)),
        digits=tuple(digits),
    )


def decode_member(Phi, r: int, k: int, code: MemberCode) -> Packed:
    """Rebuild a member from its code; the inverse of encode_member."""
    if len(code.free_positions) != len(code.free_contents):
        raise PackError("free positions and contents differ in length")
    if list(code.free_positions) != sorted(set(code.free_positions)):
        raise PackError("free positions must be strictly increasing")
    for p, c in zip(code.free_positions, code.free_contents):
        if not (1 <= p <= r and 1 <= c <= r):
            raise PackError(f"free entry ({p}, {c}) out of range for r={r}")
    specified = dict(zip(code.free_positions, code.free_contents))
    stream = iter(code.digits)
    consumed = 0
    while len(specified) < r:
        for i in range(1, r + 1):
            if i in specified:
                continue
            found = find_entailment(Phi, r, k, specified.items(), i)
            if found is None:
                continue
            _, D = found
            try:
                z = next(stream)
            except StopIteration:
                raise PackError("digit stream exhausted before all positions derived")
            consumed += 1
            ordered = sorted(D)
            if not 0 <= z < len(ordered):
                raise PackError(f"digit {z} out of range for an i-set of {len(ordered)}")
            specified[i] = ordered[z][1]
            break
        else:
            raise PackError("code does not derive all positions against this family")
    if consumed != len(code.digits):
        raise PackError("digit stream longer than the derivation")
    return tuple(specified[p] for p in range(1, r + 1))


def counting_bound(r: int, k: int) -> int:
    """Ceiling on the size of any k-tangled family of r-block words."""
    m = k * r // (k + 1)
    return comb(r, m) * r**m * k ** (r - m)


@dataclass(frozen=True)
class EncodingReport:
    r: int
    k: int
    family_size: int
    bound: int
    codes: dict = field(hash=False, repr=False, default_factory=dict)


def tangled_encoding(
    family, k: int, config: LabConfig = DEFAULT_CONFIG
) -> EncodingReport:
    """Encode every member of a tangled family and prove it round-trips.

    Raises NotTangledError if the family is not tangled. Injectivity,
    decodability, and the counting bound are all checked here rather
    than trusted.
    """
    report = is_tangled(family, k, config)
    if not report.tangled:
        nu, i = report.witness
        raise NotTangledError(
            f"family is not tangled: member {nu} has no certificate at position {i}"
        )
    Phi, r = pack_family(family)
    codes: dict[Packed, MemberCode] = {}
    for mu in Phi:
        code = encode_member(Phi, r, k, mu)
        back = decode_member(Phi, r, k, code)
        if back != mu:
            raise VerificationError(f"decode(encode({mu})) = {back}")
        codes[mu] = code
    if len(set(codes.values())) != len(Phi):
        raise VerificationError("two members share a code")
    bound = counting_bound(r, k)
    if len(Phi) > bound:
        raise VerificationError(
            f"tangled family of {len(Phi)} members exceeds the bound {bound}"
        )
    return EncodingReport(
        r=r, k=k, family_size=len(Phi), bound=bound, codes=codes
    )


# ---------------------------------------------------------------------------
# size thresholds and the dichotomy runner


def satisfies_size_thresholds(n: int, k: int, d: int) -> bool:
    """Are r^r and its (2k+1)-th power large enough against n^d and k^r?

    Both inequalities are evaluated in exact integers; the second is
    stated at the (2k+1)-th power to clear the fractional exponent in
    the raw form.
    """
    if k < 1 or d < 0:
        raise DegeneracyError("need k >= 1 and d >= 0")
    r = block_count(n)
    first = r**r >= n**d * k**r
    second = r ** (r * (2 * k + 1)) >= n ** (d * (2 * k + 1)) * r ** (2 * k * r)
    return first and second


def size_thresholds(k: int, d: int, search_limit: int = 10**6) -> int:
    """The least perfect square n meeting both threshold inequalities."""
    r = 1
    while r * r <= search_limit:
        if satisfies_size_thresholds(r * r, k, d):
            return r * r
        r += 1
    raise SearchBudgetError(f"no satisfying square up to {search_limit}")


@dataclass(frozen=True)
class DichotomyResult:
    tangled: bool
    r: int
    k: int
    family_size: int
    limit: EntailmentLimit | None = None
    encoding: EncodingReport | None = None


def dichotomy_suite(
    family, k: int, config: LabConfig = DEFAULT_CONFIG
) -> DichotomyResult:
    """Run one family through the dichotomy, verifying whichever side holds.

    A tangled family must encode injectively within the counting bound;
    a family that is not tangled must yield a verified bad k-limit that
    also passes the packed-level conditions. Either failure raises
    VerificationError. Exactly one side applies to any family.
    """
    report = is_tangled(family, k, config)
    Phi, r = pack_family(family)
    if report.tangled:
        encoding = tangled_encoding(family, k, config)
        return DichotomyResult(
            tangled=True, r=r, k=k, family_size=len(Phi), encoding=encoding
        )
    limit = bad_limit_via_entailment(family, k, config)
    if limit is None:
        raise VerificationError("tangledness verdict flipped between runs")
    conditions = check_packed_limit_conditions(limit.packed, limit.source, Phi, k)
    if not conditions.ok:
        raise VerificationError(
            f"limit conditions failed on a constructed limit: {conditions.detail}"
        )
    return DichotomyResult(
        tangled=False, r=r, k=k, family_size=len(Phi), limit=limit
    )
