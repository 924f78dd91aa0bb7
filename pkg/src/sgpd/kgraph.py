"""Higher-rank graphs as degree-truncated small categories.

A rank-k structure is presented by a skeleton: vertices, coloured edges,
and factorisation squares that identify each two-colour path with its
colour-swapped mate.  Morphisms are square-move classes of composable edge
paths with degree (the per-colour letter count) capped by a vector bound.
Each class must contain exactly one colour-sorted word; that normal form
names the morphism.  Degree additivity and unique factorisation are then
validated exhaustively within the truncation rather than assumed.

Composable pairs whose degrees sum past the bound become artifact pairs of
the underlying table, and morphisms sitting on the bound in some colour
are flagged boundary, mirroring the Markov truncation conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .core import SemigroupoidTable, SgpdError, intersects


class InconsistentSquares(SgpdError):
    pass


class BadSplit(SgpdError):
    pass


class DegreeOutOfRange(SgpdError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    color: int
    src: str
    dst: str


Path = tuple[str, ...]  # edge names in composition order; s(w[i]) = r(w[i+1])


@dataclass(frozen=True)
class KGraphSkeleton:
    k: int
    objects: tuple[str, ...]
    edges: tuple[Edge, ...]
    squares: tuple[tuple[tuple[str, str], tuple[str, str]], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("rank must be at least 1")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("duplicate edge names")
        if set(names) & set(self.objects):
            raise ValueError("edge names must differ from object names")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object names")
        for e in self.edges:
            if not 1 <= e.color <= self.k:
                raise ValueError(f"edge {e.name} has color outside 1..{self.k}")
            if e.src not in self.objects or e.dst not in self.objects:
                raise ValueError(f"edge {e.name} has unknown endpoint")

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise ValueError(f"unknown edge {name!r}")


def _degree(skeleton: KGraphSkeleton, word: Path) -> tuple[int, ...]:
    deg = [0] * skeleton.k
    for name in word:
        deg[skeleton.edge(name).color - 1] += 1
    return tuple(deg)


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _validate_squares(skeleton: KGraphSkeleton) -> dict[tuple[str, str], tuple[str, str]]:
    """Check shape, endpoints and bijectivity; return the swap map."""
    swap: dict[tuple[str, str], tuple[str, str]] = {}
    for (a, b), (c, d) in skeleton.squares:
        ea, eb, ec, ed = (skeleton.edge(x) for x in (a, b, c, d))
        if ea.src != eb.dst or ec.src != ed.dst:
            raise InconsistentSquares(f"square side not composable: {(a, b)} = {(c, d)}")
        if ea.color == eb.color or {ea.color, eb.color} != {ec.color, ed.color}:
            raise InconsistentSquares(f"square {(a, b)} = {(c, d)} has bad colors")
        if ec.color != eb.color or ed.color != ea.color:
            raise InconsistentSquares(
                f"square {(a, b)} = {(c, d)} does not swap the color order"
            )
        if ea.dst != ec.dst or eb.src != ed.src:
            raise InconsistentSquares(
                f"square {(a, b)} = {(c, d)} identifies paths with unequal endpoints"
            )
        for side, other in (((a, b), (c, d)), ((c, d), (a, b))):
            if side in swap:
                raise InconsistentSquares(f"path {side} appears in two squares")
            swap[side] = other
    # completeness: every mixed composable 2-path must be covered
    for x in skeleton.edges:
        for y in skeleton.edges:
            if x.src == y.dst and x.color != y.color and (x.name, y.name) not in swap:
                raise InconsistentSquares(
                    f"mixed path ({x.name}, {y.name}) has no square"
                )
    return swap


@dataclass(frozen=True)
class KGraph:
    skeleton: KGraphSkeleton
    max_degree: tuple[int, ...]
    table: SemigroupoidTable
    normal_form: Mapping[str, Path]  # token -> color-sorted word ((),) for objects
    class_of: Mapping[Path, str]
    source: Mapping[str, str]
    range: Mapping[str, str]
    degree: Mapping[str, tuple[int, ...]]
    factorizations: Mapping[tuple[str, tuple[int, ...]], tuple[str, str]]

    @property
    def objects(self) -> tuple[str, ...]:
        return self.skeleton.objects

    def morphisms(self) -> list[str]:
        return sorted(self.normal_form)


def _token(skeleton: KGraphSkeleton, word: Path, obj: str) -> str:
    return obj if not word else ".".join(word)


def build_kgraph(
    skeleton: KGraphSkeleton, max_degree: Sequence[int]
) -> KGraph:
    """Materialise all morphisms of degree <= max_degree and validate the
    defining identities (degree additivity, unique factorisation)."""
    max_degree = tuple(int(x) for x in max_degree)
    if len(max_degree) != skeleton.k or any(x < 0 for x in max_degree):
        raise ValueError("max_degree must be a nonnegative vector of length k")
    swap = _validate_squares(skeleton)

    # all nonempty composable edge words of bounded degree, with endpoints;
    # identity morphisms are handled separately (an empty word cannot carry
    # its object)
    words: dict[Path, tuple[str, str]] = {}  # word -> (range, source)
    frontier: list[tuple[Path, str, str]] = [((), v, v) for v in skeleton.objects]
    while frontier:
        new_frontier = []
        for word, r, s in frontier:
            for e in skeleton.edges:
                if e.dst != s:
                    continue
                new_word = word + (e.name,)
                if not _leq(_degree(skeleton, new_word), max_degree):
                    continue
                if new_word not in words:
                    words[new_word] = (r, e.src)
                    new_frontier.append((new_word, r, e.src))
        frontier = new_frontier

    # square-move closure
    parent: dict[Path, Path] = {w: w for w in words}

    def find(w):
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra

    for word in sorted(words):
        for i in range(len(word) - 1):
            pair = (word[i], word[i + 1])
            if pair in swap:
                x, y = swap[pair]
                union(word, word[:i] + (x, y) + word[i + 2 :])

    classes: dict[Path, list[Path]] = {}
    for w in sorted(words):
        classes.setdefault(find(w), []).append(w)

    def is_sorted(word: Path) -> bool:
        cols = [skeleton.edge(n).color for n in word]
        return all(a <= b for a, b in zip(cols, cols[1:]))

    normal_form: dict[str, Path] = {}
    class_of: dict[Path, str] = {}
    source: dict[str, str] = {}
    range_: dict[str, str] = {}
    degree: dict[str, tuple[int, ...]] = {}
    for v in skeleton.objects:
        normal_form[v] = ()
        source[v] = v
        range_[v] = v
        degree[v] = (0,) * skeleton.k
    for members in classes.values():
        sorted_members = [w for w in members if is_sorted(w)]
        if len(sorted_members) != 1:
            raise InconsistentSquares(
                f"class of {min(members)} has {len(sorted_members)} color-sorted "
                f"members: {sorted(sorted_members)}"
            )
        nf = sorted_members[0]
        endpoints = {words[w] for w in members}
        if len(endpoints) != 1:
            raise InconsistentSquares(
                f"class of {nf} mixes endpoints {sorted(endpoints)}"
            )
        r, s = endpoints.pop()
        token = _token(skeleton, nf, r)
        normal_form[token] = nf
        for w in members:
            class_of[w] = token
        source[token] = s
        range_[token] = r
        degree[token] = _degree(skeleton, nf)

    if len(normal_form) != len(classes) + len(skeleton.objects):
        raise InconsistentSquares("morphism tokens collide")

    # composition table with degree-overflow artifacts
    product: dict[tuple[str, str], str] = {}
    artifacts: set[tuple[str, str]] = set()
    tokens = sorted(normal_form)
    for f in tokens:
        for g in tokens:
            if source[f] != range_[g]:
                continue
            total = _vec_add(degree[f], degree[g])
            if _leq(total, max_degree):
                combined = normal_form[f] + normal_form[g]
                product[(f, g)] = class_of[find(combined)] if combined else f
            else:
                artifacts.add((f, g))
    boundary = frozenset(
        t
        for t in tokens
        if any(d == b for d, b in zip(degree[t], max_degree))
        and degree[t] != (0,) * skeleton.k
    )
    table = SemigroupoidTable.build(tokens, product, boundary, artifacts)

    # unique factorisation: every split of every degree has exactly one pair
    factorizations: dict[tuple[str, tuple[int, ...]], tuple[str, str]] = {}
    for f in tokens:
        d = degree[f]
        word_f = normal_form[f]
        if not word_f:
            factorizations[(f, d)] = (f, f)
            continue
        members = classes[find(word_f)]
        for n in iproduct(*(range(x + 1) for x in d)):
            pairs = set()
            for w in members:
                for cut in range(len(w) + 1):
                    if _degree(skeleton, w[:cut]) == n:
                        head = class_of[w[:cut]] if w[:cut] else range_[f]
                        tail = class_of[w[cut:]] if w[cut:] else source[f]
                        pairs.add((head, tail))
            if len(pairs) != 1:
                raise InconsistentSquares(
                    f"morphism {f} splits at degree {n} into {len(pairs)} pairs: "
                    f"{sorted(pairs)}"
                )
            factorizations[(f, tuple(n))] = pairs.pop()

    return KGraph(
        skeleton,
        max_degree,
        table,
        normal_form,
        class_of,
        source,
        range_,
        degree,
        factorizations,
    )


def factorize(kg: KGraph, f: str, n: Sequence[int], m: Sequence[int]) -> tuple[str, str]:
    """The unique (g, h) with gh = f, d(g) = n, d(h) = m."""
    n, m = tuple(n), tuple(m)
    if f not in kg.degree:
        raise SgpdError(f"unknown morphism {f!r}")
    if _vec_add(n, m) != kg.degree[f] or any(x < 0 for x in n + m):
        raise BadSplit(f"{n} + {m} != d({f}) = {kg.degree[f]}")
    return kg.factorizations[(f, n)]


@dataclass(frozen=True)
class DegreeSlice:
    vertex: str
    n: tuple[int, ...]
    members: frozenset[str]


def degree_slice(kg: KGraph, v: str, n: Sequence[int]) -> DegreeSlice:
    """Morphisms of range v and degree exactly n."""
    n = tuple(n)
    if v not in kg.objects:
        raise SgpdError(f"unknown object {v!r}")
    if not _leq(n, kg.max_degree) or any(x < 0 for x in n):
        raise DegreeOutOfRange(f"degree {n} outside bound {kg.max_degree}")
    members = frozenset(
        t for t in kg.normal_form if kg.range[t] == v and kg.degree[t] == n
    )
    return DegreeSlice(v, n, members)


@dataclass(frozen=True)
class EmptySlice:
    vertex: str
    n: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def rfns_check(kg: KGraph):
    """Row-finite and source-free within the truncation: every degree
    slice up to the bound is nonempty (finiteness is automatic here)."""
    for v in sorted(kg.objects):
        for n in iproduct(*(range(x + 1) for x in kg.max_degree)):
            if not degree_slice(kg, v, n).members:
                return EmptySlice(v, tuple(n))
    return True


@dataclass(frozen=True)
class SliceWitness:
    kind: str
    detail: tuple

    def __bool__(self) -> bool:
        return False


def slice_partition_check(kg: KGraph, v: str, n: Sequence[int]):
    """The degree-n slice at v is a partition of the range-v morphisms,
    checked against the members whose common multiples stay in bounds."""
    n = tuple(n)
    slice_ = degree_slice(kg, v, n)
    members = sorted(slice_.members)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            m = intersects(kg.table, a, b)
            if m is not None:
                return SliceWitness("intersecting-pair", (a, b, m))
    budget = _vec_sub(kg.max_degree, n)
    for g in sorted(kg.normal_form):
        if kg.range[g] != v or not _leq(kg.degree[g], budget):
            continue
        if all(intersects(kg.table, g, h) is None for h in members):
            return SliceWitness("uncovered", (g,))
    return True


def common_extensions(
    kg: KGraph, f: str, g: str, n: Sequence[int]
) -> list[tuple[str, str]]:
    """All (p, q) with fp = gq of degree exactly n, sorted."""
    n = tuple(n)
    for t in (f, g):
        if t not in kg.degree:
            raise SgpdError(f"unknown morphism {t!r}")
    if not _leq(n, kg.max_degree):
        raise DegreeOutOfRange(f"degree {n} outside bound {kg.max_degree}")
    if not (_leq(kg.degree[f], n) and _leq(kg.degree[g], n)):
        raise DegreeOutOfRange(f"degree {n} does not dominate d({f}), d({g})")
    out = []
    for p in sorted(kg.normal_form):
        if kg.range[p] != kg.source[f] or kg.degree[p] != _vec_sub(n, kg.degree[f]):
            continue
        fp = kg.table.product[(f, p)]
        for q in sorted(kg.normal_form):
            if kg.range[q] != kg.source[g] or kg.degree[q] != _vec_sub(n, kg.degree[g]):
                continue
            if kg.table.product[(g, q)] == fp:
                out.append((p, q))
    return out


@dataclass(frozen=True)
class DegreeViolation:
    kind: str  # "additivity", "no-factorization", "non-unique-factorization"
    detail: tuple


@dataclass(frozen=True)
class DegreeReport:
    additive: bool
    violations: tuple[DegreeViolation, ...]

    def __bool__(self) -> bool:
        return not self.violations


def degree_check(
    table: SemigroupoidTable, degrees: Mapping[str, Sequence[int]]
) -> DegreeReport:
    """Validate an arbitrary table + degree map against the rank-k clauses,
    literally: additivity on composable pairs and, for every componentwise
    split of every degree, existence of exactly one factorisation.  The
    report never infers around a failure (zero splits of unit-free
    structures genuinely fail existence and are listed as such)."""
    degrees = {f: tuple(v) for f, v in degrees.items()}
    if set(degrees) != set(table.elements):
        raise SgpdError("degree map must cover the carrier exactly")
    violations = []
    additive = True
    for (f, g), fg in sorted(table.product.items()):
        if _vec_add(degrees[f], degrees[g]) != degrees[fg]:
            additive = False
            violations.append(
                DegreeViolation("additivity", (f, g, fg, degrees[f], degrees[g], degrees[fg]))
            )
    for f in sorted(table.elements):
        d = degrees[f]
        for n in iproduct(*(range(x + 1) for x in d)):
            n = tuple(n)
            pairs = sorted(
                (g, h)
                for (g, h), p in table.product.items()
                if p == f and degrees[g] == n and degrees[h] == _vec_sub(d, n)
            )
            if not pairs:
                violations.append(DegreeViolation("no-factorization", (f, n)))
            elif len(pairs) > 1:
                violations.append(
                    DegreeViolation("non-unique-factorization", (f, n, tuple(pairs)))
                )
    return DegreeReport(additive, tuple(violations))
