"""Ordered syntactic monoids and the equation-based class checks.

The transition monoid of a minimal DFA is computed by breadth-first
closure over the generator transformations, so element 0 is always the
identity and every element remembers a shortest representative word
(ties broken lexicographically by the alphabet order). The syntactic
order is "more accepting is larger": s <= t when every context (p, q)
with p s q accepting also has p t q accepting. With that orientation the
image of the language is an upper set.

Membership in sigma2 (first-order logic with two blocks of quantifiers
over ordered positions, existential first) is decided by one equation
schema over the ordered monoid: for every idempotent x and every y that
the monoid-level subword relation pairs with x, x <= x y x must hold.
pi2 is the same check on the complement, delta2 the conjunction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AntisymmetryError,
    MonoidSizeError,
    NotMinimalError,
    UnknownSymbolError,
    VerificationError,
)
from .languages import Dfa, Word, as_word, minimize

MONOID_SIZE_LIMIT = 4096


# ---------------------------------------------------------------------------
# transition monoid


@dataclass(frozen=True)
class FiniteMonoid:
    """Multiplication table with a designated identity.

    table[i][j] is the product (element i) * (element j).
    """

    size: int
    identity: int
    table: tuple[tuple[int, ...], ...]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        for e in elements:
            acc = self.table[acc][e]
        return acc

    def idempotents(self) -> list[int]:
        return [e for e in range(self.size) if self.table[e][e] == e]

    def omega_power(self, x: int) -> int:
        """The unique idempotent among the powers of x."""
        power = x
        for _ in range(self.size + 1):
            if self.table[power][power] == power:
                return power
            power = self.table[power][x]
        raise VerificationError("no idempotent power found; table is not a monoid")

    def validate(self) -> None:
        """Full associativity and identity check. Cubic; test-sized tables only."""
        e = self.identity
        for i in range(self.size):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise VerificationError("identity law fails")
        for i in range(self.size):
            for j in range(self.size):
                ij = self.table[i][j]
                for k in range(self.size):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise VerificationError("associativity fails")


@dataclass(frozen=True)
class Morphism:
    """Morphism from words over the source alphabet onto the monoid."""

    alphabet: tuple[str, ...]
    monoid: FiniteMonoid
    generator: dict[str, int] = field(hash=False)
    representative: tuple[Word, ...]  # shortest word per element, lex-minimal

    def image(self, sym: str) -> int:
        try:
            return self.generator[sym]
        except KeyError:
            raise UnknownSymbolError(f"symbol {sym!r} not in alphabet") from None

    def eval(self, w: str | Sequence[str]) -> int:
        return self.monoid.product(
            self.image(sym) for sym in as_word(w, self.alphabet)
        )


def is_minimal(d: Dfa) -> bool:
    m = minimize(d)
    return m.n_states == d.n_states


def transition_monoid(
    d: Dfa, max_size: int = MONOID_SIZE_LIMIT
) -> tuple[FiniteMonoid, Morphism]:
    """Transition monoid of a minimal DFA, with its evaluation morphism.

    Elements are state transformations discovered breadth-first from the
    identity, so indices are stable for a given DFA. Raises
    NotMinimalError for non-minimal input (minimize first) and
    MonoidSizeError beyond max_size elements.
    """
    if not is_minimal(d):
        raise NotMinimalError(
            "transition monoid is syntactic only for minimal DFAs; minimize first"
        )
    n = d.n_states
    identity = tuple(range(n))
    gens = {
        sym: tuple(d.delta[q][a] for q in range(n))
        for a, sym in enumerate(d.alphabet)
    }

    index: dict[tuple[int, ...], int] = {identity: 0}
    elements: list[tuple[int, ...]] = [identity]
    words: list[Word] = [()]
    i = 0
    while i < len(elements):
        current = elements[i]
        for sym in d.alphabet:
            g = gens[sym]
            composed = tuple(g[q] for q in current)
            if composed not in index:
                if len(elements) >= max_size:
                    raise MonoidSizeError(
                        f"transition monoid exceeds {max_size} elements"
                    )
                index[composed] = len(elements)
                elements.append(composed)
                words.append(words[i] + (sym,))
        i += 1

    size = len(elements)
    table = tuple(
        tuple(index[tuple(t[q] for q in s)] for t in elements) for s in elements
    )
    monoid = FiniteMonoid(size=size, identity=0, table=table)
    morphism = Morphism(
        alphabet=d.alphabet,
        monoid=monoid,
        generator={sym: index[gens[sym]] for sym in d.alphabet},
        representative=tuple(words),
    )
    return monoid, morphism


# ---------------------------------------------------------------------------
# syntactic order


@dataclass(frozen=True)
class OrderedMonoid:
    """A monoid with a compatible partial order, as bitmask rows.

    leq_bits[s] has bit t set when s <= t.
    """

    monoid: FiniteMonoid
    leq_bits: tuple[int, ...]

    def leq(self, s: int, t: int) -> bool:
        return bool(self.leq_bits[s] >> t & 1)

    def validate(self) -> None:
        """Reflexivity, antisymmetry, transitivity, compatibility."""
        m = self.monoid
        for s in range(m.size):
            if not self.leq(s, s):
                raise VerificationError("order not reflexive")
            for t in range(m.size):
                if not self.leq(s, t):
                    continue
                if s != t and self.leq(t, s):
                    raise VerificationError("order not antisymmetric")
                if self.leq_bits[t] & ~self.leq_bits[s]:
                    raise VerificationError("order not transitive")
                for u in range(m.size):
                    if not self.leq(m.mul(s, u), m.mul(t, u)):
                        raise VerificationError("order not right compatible")
                    if not self.leq(m.mul(u, s), m.mul(u, t)):
                        raise VerificationError("order not left compatible")


def syntactic_order(monoid: FiniteMonoid, accepting: frozenset[int]) -> OrderedMonoid:
    """Order by context acceptance: s <= t iff p s q in P implies p t q in P.

    Antisymmetry can only fail if the monoid is not the true syntactic
    monoid of the language, i.e. the source DFA was not minimal; that is
    reported rather than repaired.
    """
    m = monoid.size
    table = monoid.table
    acc_bit = [1 << q if q in accepting else 0 for q in range(m)]

    # right_mask[u]: bit q set iff u*q is accepting
    right_mask = [0] * m
    for u in range(m):
        row = table[u]
        bits = 0
        for q in range(m):
            if acc_bit[row[q]]:
                bits |= 1 << q
        right_mask[u] = bits

    # sig[s][p] = right_mask[p*s]; s <= t iff sig[s][p] subset of sig[t][p] for all p
    sig = [[right_mask[table[p][s]] for p in range(m)] for s in range(m)]

    leq_rows = []
    for s in range(m):
        row_bits = 0
        ss = sig[s]
        for t in range(m):
            st = sig[t]
            if all(ss[p] & ~st[p] == 0 for p in range(m)):
                row_bits |= 1 << t
        leq_rows.append(row_bits)

    for s in range(m):
        for t in range(s + 1, m):
            if leq_rows[s] >> t & 1 and leq_rows[t] >> s & 1:
                raise AntisymmetryError(
                    f"elements {s} and {t} are order equivalent; "
                    "the source DFA was not minimal"
                )
    return OrderedMonoid(monoid=monoid, leq_bits=tuple(leq_rows))


# ---------------------------------------------------------------------------
# recognition bundle


@dataclass(frozen=True)
class Recognition:
    """Everything needed to study a language through its ordered monoid."""

    dfa: Dfa
    ordered: OrderedMonoid
    morphism: Morphism
    accepting: frozenset[int]  # elements of the monoid, an upper set

    @property
    def monoid(self) -> FiniteMonoid:
        return self.ordered.monoid

    def member(self, w: str | Sequence[str]) -> bool:
        return self.morphism.eval(w) in self.accepting

    def complemented(self) -> "Recognition":
        """Recognition of the complement: same monoid, reversed order."""
        from .languages import complement

        flipped = frozenset(range(self.monoid.size)) - self.accepting
        return Recognition(
            dfa=complement(self.dfa),
            ordered=syntactic_order(self.monoid, flipped),
            morphism=self.morphism,
            accepting=flipped,
        )


def recognize(d: Dfa, max_size: int = MONOID_SIZE_LIMIT) -> Recognition:
    """Build the ordered syntactic monoid bundle for (the minimization of) d."""
    d = minimize(d)
    monoid, morphism = transition_monoid(d, max_size=max_size)
    # element e is accepting iff its transformation sends the initial state
    # into F; running the representative word computes exactly that image
    accepting = frozenset(
        e
        for e, w in enumerate(morphism.representative)
        if _run(d, w) in d.accepting
    )
    ordered = syntactic_order(monoid, accepting)
    return Recognition(dfa=d, ordered=ordered, morphism=morphism, accepting=accepting)


def _run(d: Dfa, w: Word) -> int:
    state = d.initial
    for sym in w:
        state = d.step(state, sym)
    return state


def neutral_letters(d) -> frozenset[str]:
    """Letters whose image is the identity; they never affect membership.

    Accepts a DFA or an already-built Recognition.
    """
    rec = d if isinstance(d, Recognition) else recognize(d)
    ident = rec.monoid.identity
    return frozenset(
        sym for sym in rec.morphism.alphabet if rec.morphism.image(sym) == ident
    )


# ---------------------------------------------------------------------------
# monoid-level subword relation


@dataclass(frozen=True)
class SubwordWitness:
    """A shortest word evaluating to x with marked positions evaluating to y."""

    word: Word
    positions: tuple[int, ...]  # 1-indexed, strictly increasing


@dataclass(frozen=True)
class SubwordRelation:
    """All pairs (h(w), h(v)) with v a scattered subword of w.

    Computed as the submonoid of M x M generated by (h(a), h(a)) and
    (h(a), 1) for every letter a. Each pair keeps a shortest witness,
    found breadth-first with candidates ordered by (word, positions).
    """

    pairs: frozenset[tuple[int, int]]
    witness: dict[tuple[int, int], SubwordWitness] = field(hash=False)

    def subwords_of(self, x: int) -> list[int]:
        return sorted(y for (a, y) in self.pairs if a == x)


def subword_relation(morphism: Morphism) -> SubwordRelation:
    monoid = morphism.monoid
    table = monoid.table
    ident = monoid.identity
    alphabet = morphism.alphabet

    start = (ident, ident)
    witness: dict[tuple[int, int], SubwordWitness] = {
        start: SubwordWitness(word=(), positions=())
    }
    frontier: list[tuple[tuple[int, int], Word, tuple[int, ...]]] = [
        (start, (), ())
    ]
    while frontier:
        candidates: list[tuple[Word, tuple[int, ...], tuple[int, int]]] = []
        for (x, y), w, ps in frontier:
            pos = len(w) + 1
            for sym in alphabet:
                g = morphism.image(sym)
                nw = w + (sym,)
                # skipping the new letter keeps the smaller marking
                candidates.append(((nw), ps, (table[x][g], y)))
                candidates.append(((nw), ps + (pos,), (table[x][g], table[y][g])))
        candidates.sort(key=lambda c: (c[0], c[1]))
        frontier = []
        for w, ps, pair in candidates:
            if pair not in witness:
                witness[pair] = SubwordWitness(word=w, positions=ps)
                frontier.append((pair, w, ps))
    return SubwordRelation(pairs=frozenset(witness), witness=witness)


def verify_subword_witness(
    morphism: Morphism, pair: tuple[int, int], wit: SubwordWitness
) -> bool:
    x, y = pair
    if any(not 1 <= p <= len(wit.word) for p in wit.positions):
        return False
    if list(wit.positions) != sorted(set(wit.positions)):
        return False
    sub = tuple(wit.word[p - 1] for p in wit.positions)
    return morphism.eval(wit.word) == x and morphism.eval(sub) == y


# ---------------------------------------------------------------------------
# equation check and classification


@dataclass(frozen=True)
class EquationWitness:
    """A failing instance of the sigma2 equation, with replay material.

    x is idempotent, y is a subword companion of x, and the context
    (p, q) separates: p x q is accepting while p x y x q is not.
    Representative words allow replaying both memberships on the DFA.
    """

    x: int
    y: int
    context: tuple[int, int]
    x_word: Word
    y_word: Word
    p_word: Word
    q_word: Word
    pair_witness: SubwordWitness


@dataclass(frozen=True)
class EquationVerdict:
    holds: bool
    witness: EquationWitness | None = None


def check_sigma2(rec: Recognition, sw: SubwordRelation) -> EquationVerdict:
    """Does x <= x y x hold for every idempotent x and subword companion y?

    Scans idempotents and companions in index order and returns the first
    failure with the first separating context, so verdicts are stable.
    """
    ordered = rec.ordered
    monoid = rec.monoid
    table = monoid.table
    rep = rec.morphism.representative
    acc = rec.accepting

    for x in monoid.idempotents():
        for y in sw.subwords_of(x):
            xyx = table[table[x][y]][x]
            if ordered.leq(x, xyx):
                continue
            context = next(
                (p, q)
                for p in range(monoid.size)
                for q in range(monoid.size)
                if table[table[p][x]][q] in acc
                and table[table[p][xyx]][q] not in acc
            )
            p, q = context
            return EquationVerdict(
                holds=False,
                witness=EquationWitness(
                    x=x,
                    y=y,
                    context=context,
                    x_word=rep[x],
                    y_word=rep[y],
                    p_word=rep[p],
                    q_word=rep[q],
                    pair_witness=sw.witness[(x, y)],
                ),
            )
    return EquationVerdict(holds=True)


def up_word_accepts(rec: Recognition, x: int, w) -> bool:
    """Does the product of a word over element symbols dominate x?

    Words use the canonical element symbols "e0", "e1", ... (or any
    object with an `elements` attribute of element indices). This makes
    threshold problems over the monoid ordinary languages over a finite
    alphabet.
    """
    elements = getattr(w, "elements", None)
    if elements is None:
        elements = [parse_element_symbol(sym, rec.monoid.size) for sym in w]
    product = rec.monoid.product(elements)
    return rec.ordered.leq(x, product)


def element_symbol(e: int) -> str:
    return f"e{e}"


def parse_element_symbol(sym: str, size: int) -> int:
    if not (isinstance(sym, str) and sym.startswith("e") and sym[1:].isdigit()):
        raise UnknownSymbolError(f"{sym!r} does not name a monoid element")
    e = int(sym[1:])
    if not 0 <= e < size:
        raise UnknownSymbolError(f"{sym!r} is out of range for this monoid")
    return e


@dataclass(frozen=True)
class ClassReport:
    """Verdicts for one language, with monoid statistics and witnesses."""

    description: str
    alphabet: tuple[str, ...]
    monoid_size: int
    idempotent_count: int
    subword_pair_count: int
    neutral: tuple[str, ...]
    sigma2: EquationVerdict
    pi2: EquationVerdict

    @property
    def delta2(self) -> bool:
        return self.sigma2.holds and self.pi2.holds


def classify(
    d: Dfa, description: str = "", max_size: int = MONOID_SIZE_LIMIT
) -> ClassReport:
    """Full classification of the language of d.

    sigma2 comes from the equation check on the language, pi2 from the
    same check on the complement (same monoid, opposite order), delta2
    is their conjunction.
    """
    return classify_recognition(recognize(d, max_size=max_size), description)


def classify_recognition(rec: Recognition, description: str = "") -> ClassReport:
    """classify for callers that already hold the recognition bundle."""
    sw = subword_relation(rec.morphism)
    sigma2 = check_sigma2(rec, sw)
    pi2 = check_sigma2(rec.complemented(), sw)
    return ClassReport(
        description=description,
        alphabet=rec.morphism.alphabet,
        monoid_size=rec.monoid.size,
        idempotent_count=len(rec.monoid.idempotents()),
        subword_pair_count=len(sw.pairs),
        neutral=tuple(sorted(neutral_letters(rec))),
        sigma2=sigma2,
        pi2=pi2,
    )


def confirm_failing_pair(
    rec: Recognition,
    sw: SubwordRelation,
    x_word: str | Sequence[str],
    y_word: str | Sequence[str],
) -> dict:
    """Check that (h(x_word), h(y_word)) is a valid failing equation pair.

    Valid means: h(x_word) idempotent, the pair is in the subword
    relation, and some context separates x from x y x. Useful for
    confirming externally supplied witnesses independently of the
    minimal witness the checker itself reports.
    """
    h = rec.morphism
    x = h.eval(x_word)
    y = h.eval(y_word)
    table = rec.monoid.table
    xyx = table[table[x][y]][x]
    idempotent = table[x][x] == x
    in_relation = (x, y) in sw.pairs
    separated = not rec.ordered.leq(x, xyx)
    return {
        "x": x,
        "y": y,
        "idempotent": idempotent,
        "in_subword_relation": in_relation,
        "equation_fails": separated,
        "valid_failing_pair": idempotent and in_relation and separated,
    }


# ---------------------------------------------------------------------------
# serialization


def monoid_to_json(rec: Recognition) -> str:
    monoid = rec.monoid
    payload = {
        "size": monoid.size,
        "identity": monoid.identity,
        "table": [list(row) for row in monoid.table],
        "generators": {
            sym: rec.morphism.image(sym) for sym in rec.morphism.alphabet
        },
        "order": [
            [bool(rec.ordered.leq_bits[s] >> t & 1) for t in range(monoid.size)]
            for s in range(monoid.size)
        ],
        "accepting": sorted(rec.accepting),
    }
    return json.dumps(payload, sort_keys=True, indent=2)


def monoid_from_json(text: str) -> tuple[FiniteMonoid, dict[str, int], OrderedMonoid, frozenset[int]]:
    """Load a monoid bundle, revalidating the algebraic laws."""
    payload = json.loads(text)
    table = tuple(tuple(int(v) for v in row) for row in payload["table"])
    monoid = FiniteMonoid(size=int(payload["size"]), identity=int(payload["identity"]), table=table)
    if monoid.size <= 256:
        monoid.validate()
    rows = [0] * monoid.size
    for s, row in enumerate(payload["order"]):
        bits = 0
        for t, flag in enumerate(row):
            if flag:
                bits |= 1 << t
        rows[s] = bits
    ordered = OrderedMonoid(monoid=monoid, leq_bits=tuple(rows))
    ordered.validate()
    accepting = frozenset(int(e) for e in payload["accepting"])
    generators = {str(k): int(v) for k, v in payload["generators"].items()}
    return monoid, generators, ordered, accepting
