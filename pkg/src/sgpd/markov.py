"""Markov semigroupoids: admissible words of a finite 0-1 matrix.

Words compose by concatenation when the matrix allows the junction letter
pair.  A truncation materialises all words up to a length bound; pairs
whose concatenation would overflow the bound become artifact pairs and
maximal-length words are flagged as boundary, so downstream spring and
tightness analysis never mistakes a cut word for a genuine dead end.

Word-level disjointness is decided exactly and independently of any bound:
two admissible words intersect precisely when one is an initial segment of
the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Sequence

from .core import SemigroupoidTable, SgpdError


class EmptyAlphabet(SgpdError):
    pass


class UnknownLetter(SgpdError):
    pass


class InadmissibleWord(SgpdError):
    pass


class SpringRow(SgpdError):
    """The requested row of the matrix is zero; the letter heads no words."""


@dataclass(frozen=True)
class Matrix01:
    alphabet: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.alphabet:
            raise EmptyAlphabet("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letters")
        n = len(self.alphabet)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("entries must be square over the alphabet")
        if any(x not in (0, 1) for r in self.entries for x in r):
            raise ValueError("entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], alphabet=None) -> "Matrix01":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if alphabet is None:
            alphabet = tuple(str(i + 1) for i in range(len(rows)))
        return cls(tuple(alphabet), rows)

    def index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise UnknownLetter(f"letter {letter!r} not in alphabet") from None

    def entry(self, i: str, j: str) -> int:
        return self.entries[self.index(i)][self.index(j)]

    def row_is_zero(self, letter: str) -> bool:
        return all(x == 0 for x in self.entries[self.index(letter)])

    def admissible(self, word: Sequence[str]) -> bool:
        if not word:
            return False
        for letter in word:
            self.index(letter)
        return all(self.entry(a, b) == 1 for a, b in zip(word, word[1:]))


def word_token(matrix: Matrix01, word: Sequence[str]) -> str:
    sep = "" if all(len(a) == 1 for a in matrix.alphabet) else "."
    return sep.join(word)


@dataclass(frozen=True)
class MarkovTruncation:
    matrix: Matrix01
    max_len: int
    table: SemigroupoidTable
    words: dict[str, tuple[str, ...]]  # token -> letters

    def word_of(self, token: str) -> tuple[str, ...]:
        return self.words[token]


def enumerate_words(matrix: Matrix01, max_len: int) -> list[tuple[str, ...]]:
    """All admissible words of length 1..max_len, ordered by length then
    alphabet position."""
    words: list[tuple[str, ...]] = []
    level = [(a,) for a in matrix.alphabet]
    for _ in range(max_len):
        words.extend(level)
        level = [
            w + (b,)
            for w in level
            for b in matrix.alphabet
            if matrix.entry(w[-1], b) == 1
        ]
    return words


def build_markov(matrix: Matrix01, max_len: int) -> MarkovTruncation:
    """Truncated word table; the word count is cross-checked against the
    transfer-matrix census before anything else runs."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    words = enumerate_words(matrix, max_len)
    expected = _transfer_matrix_count(matrix, max_len)
    if len(words) != expected:
        raise SgpdError(
            f"word census mismatch: enumerated {len(words)}, expected {expected}"
        )
    tokens = {w: word_token(matrix, w) for w in words}
    if len(set(tokens.values())) != len(words):
        raise SgpdError("word tokens collide; alphabet labels are ambiguous")
    product = {}
    artifacts = set()
    for a in words:
        for b in words:
            if matrix.entry(a[-1], b[0]) != 1:
                continue
            if len(a) + len(b) <= max_len:
                product[(tokens[a], tokens[b])] = tokens[a + b]
            else:
                artifacts.add((tokens[a], tokens[b]))
    boundary = frozenset(tokens[w] for w in words if len(w) == max_len)
    table = SemigroupoidTable.build(
        tokens.values(), product, boundary, artifacts
    )
    return MarkovTruncation(matrix, max_len, table, {t: w for w, t in tokens.items()})


def _transfer_matrix_count(matrix: Matrix01, max_len: int) -> int:
    n = len(matrix.alphabet)
    total = n
    vec = [1] * n  # words of length 1 ending at each letter
    for _ in range(max_len - 1):
        vec = [
            sum(vec[i] * matrix.entries[i][j] for i in range(n)) for j in range(n)
        ]
        total += sum(vec)
    return total


def word_disjoint(matrix: Matrix01, a: Sequence[str], b: Sequence[str]) -> bool:
    """Exact, bound-independent: disjoint iff neither word is an initial
    segment of the other."""
    a, b = tuple(a), tuple(b)
    for w in (a, b):
        if not matrix.admissible(w):
            raise InadmissibleWord(f"{w} is not admissible")
    shorter = min(len(a), len(b))
    return a[:shorter] != b[:shorter]


def follow_weight(
    matrix: Matrix01, required: Iterable[str], forbidden: Iterable[str], letter: str
) -> int:
    """1 when `letter` may follow every letter of `required` and none of
    `forbidden`, else 0 (a product of entries and complements)."""
    matrix.index(letter)
    out = 1
    for x in required:
        out *= matrix.entry(x, letter)
    for y in forbidden:
        out *= 1 - matrix.entry(y, letter)
    return out


def follower_letters(
    matrix: Matrix01, required: Iterable[str], forbidden: Iterable[str]
) -> frozenset[str]:
    required, forbidden = list(required), list(forbidden)
    return frozenset(
        j for j in matrix.alphabet if follow_weight(matrix, required, forbidden, j)
    )


@dataclass(frozen=True)
class GraphObstruction:
    """Entries (i,j)=1, (i2,j)=1, (i2,j2)=1 but (i,j2)=0: any source/range
    assignment would force s(i)=r(j2) and contradict the zero entry."""

    i: str
    j: str
    i2: str
    j2: str

    def __bool__(self) -> bool:
        return False

    def chain(self) -> str:
        return (
            f"s({self.i})=r({self.j}) via A({self.i},{self.j})=1, "
            f"r({self.j})=s({self.i2}) via A({self.i2},{self.j})=1, "
            f"s({self.i2})=r({self.j2}) via A({self.i2},{self.j2})=1, "
            f"so A({self.i},{self.j2}) should be 1 but is 0"
        )


def graphable(matrix: Matrix01):
    """True when the matrix is the edge matrix of some graph, i.e. there
    are maps s, r into a vertex set with A(i,j)=1 iff s(i)=r(j).

    Decided by the block criterion (nonzero rows sharing a 1-column must be
    identical); returns the lexicographically least violating quadruple
    otherwise.  `graphable_oracle` searches for actual assignments and must
    agree.
    """
    letters = matrix.alphabet
    for i in letters:
        for j2 in letters:
            if matrix.entry(i, j2) != 0:
                continue
            for i2 in letters:
                if matrix.entry(i2, j2) != 1:
                    continue
                for j in letters:
                    if matrix.entry(i, j) == 1 and matrix.entry(i2, j) == 1:
                        return GraphObstruction(i, j, i2, j2)
    return True


def graphable_oracle(matrix: Matrix01) -> bool:
    """Brute-force search over source assignments with ranges derived.

    Only the partition induced by s matters, so s ranges over functions
    into at most |G| vertex ids; fresh vertices for zero rows / columns are
    always available and need no search.
    """
    letters = matrix.alphabet
    n = len(letters)
    for assignment in iproduct(range(n), repeat=n):
        s = dict(zip(letters, assignment))
        ok = True
        for j in letters:
            hits = [i for i in letters if matrix.entry(i, j) == 1]
            if not hits:
                continue  # r(j) gets a fresh vertex, never equal to any s(i)
            targets = {s[i] for i in hits}
            if len(targets) > 1:
                ok = False
                break
            r_j = targets.pop()
            if any(matrix.entry(i, j) == 0 and s[i] == r_j for i in letters):
                ok = False
                break
        if ok:
            return True
    return False


def words_from(matrix: Matrix01, letter: str, max_len: int) -> list[tuple[str, ...]]:
    """Words of length <= max_len starting with the given letter."""
    return [w for w in enumerate_words(matrix, max_len) if w[0] == letter]


def enumerate_partitions(
    matrix: Matrix01, letter: str, max_len: int
) -> list[frozenset[tuple[str, ...]]]:
    """All partitions of the words starting with `letter` whose members
    have length <= max_len, via cuts of the extension tree: each node is
    either taken whole or replaced by the cuts of all its children."""
    matrix.index(letter)

    def cuts(word: tuple[str, ...]) -> list[frozenset[tuple[str, ...]]]:
        out = [frozenset([word])]
        if len(word) < max_len:
            children = [
                word + (b,) for b in matrix.alphabet if matrix.entry(word[-1], b) == 1
            ]
            if children:
                combos = [frozenset()]
                for child in children:
                    combos = [
                        acc | part for acc in combos for part in cuts(child)
                    ]
                out.extend(combos)
        return out

    return sorted(cuts((letter,)), key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class LemmaWitness:
    kind: str
    detail: tuple

    def __bool__(self) -> bool:
        return False


def _is_partition_of_words(matrix, members, letter, max_len):
    members = sorted(members)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not word_disjoint(matrix, a, b):
                return LemmaWitness("intersecting-pair", (a, b))
    universe = words_from(matrix, letter, max_len)
    for w in universe:
        if all(word_disjoint(matrix, w, h) for h in members):
            return LemmaWitness("uncovered-word", (w,))
    return True


def first_letter_decomposition_check(
    matrix: Matrix01,
    letter: str,
    max_len: int,
    partitions: Iterable[frozenset[tuple[str, ...]]] | None = None,
):
    """Every partition of the words starting with `letter` either is the
    singleton {letter} or decomposes by second letter: the block of each
    continuation letter is nonempty and, stripped of the first letter, is
    again a partition one level down.  Returns True or the first failure.
    """
    if matrix.row_is_zero(letter):
        raise SpringRow(f"row of {letter!r} is zero")
    if partitions is None:
        partitions = enumerate_partitions(matrix, letter, max_len)
    continuations = [j for j in matrix.alphabet if matrix.entry(letter, j) == 1]
    for part in partitions:
        verdict = _is_partition_of_words(matrix, part, letter, max_len)
        if verdict is not True:
            return verdict
        if part == frozenset([(letter,)]):
            continue
        if any(len(w) < 2 for w in part):
            return LemmaWitness("short-member", (min(part),))
        blocks = {j: {w for w in part if w[1] == j} for j in continuations}
        for j in continuations:
            if not blocks[j]:
                return LemmaWitness("missing-continuation", (j,))
        stripped_bound = max_len - 1
        for j in continuations:
            stripped = frozenset(w[1:] for w in blocks[j])
            verdict = _is_partition_of_words(matrix, stripped, j, stripped_bound)
            if verdict is not True:
                return LemmaWitness("stripped-not-partition", (j, verdict))
    return True
