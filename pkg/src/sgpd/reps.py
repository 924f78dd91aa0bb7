"""Finite-dimensional representations by exact-rational partial isometries.

An assignment f -> S_f of square rational matrices is checked against the
representation axioms (partial isometries, the product rule, commuting
initial/final projections, orthogonality on disjoint pairs, domination on
composable pairs) and against tightness: for each selector family the join
of final projections over every minimal covering of the selected set must
equal the corresponding product of initial projections and complements.

All verdicts are exact; there are no tolerances.  The adjoint is the
transpose (real entries).

Truncation conventions: artifact pairs are exempt from the zero clauses
(their products exist beyond the bound), and boundary elements are left
out of selector and covering iteration.  Selector families whose required
part is empty assert global nondegeneracy-style identities that a finite
truncation cannot certify, so iteration starts from one-element required
sets; those families are exactly the ones the category criterion recovers
under the nondegeneracy surrogate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .core import SemigroupoidTable, SgpdError, UNIT, common_followers, d_set, intersects, is_monic
from .covers import CoverSpec, is_partition, minimal_coverings
from .kgraph import KGraph
from .matrices import RatMat, hstack, rank
from .springs import find_springs


class DimensionMismatch(SgpdError):
    pass


class PreconditionUnmet(SgpdError):
    pass


class NotACategory(SgpdError):
    pass


class DegenerateRepresentation(SgpdError):
    """The nondegeneracy surrogate failed; the per-object criterion does
    not imply full tightness for this representation."""


@dataclass(frozen=True)
class Representation:
    table: SemigroupoidTable
    dim: int
    assign: Mapping[str, RatMat]

    def __post_init__(self):
        missing = self.table.elements - set(self.assign)
        if missing:
            raise DimensionMismatch(f"no matrix for {sorted(missing)}")
        for f in sorted(self.table.elements):
            if self.assign[f].shape != (self.dim, self.dim):
                raise DimensionMismatch(
                    f"matrix for {f} has shape {self.assign[f].shape}, "
                    f"expected {(self.dim, self.dim)}"
                )

    def mat(self, x) -> RatMat:
        if x is UNIT:
            return RatMat.identity(self.dim)
        return self.assign[x]

    def initial(self, x) -> RatMat:
        s = self.mat(x)
        return s.T @ s

    def final(self, x) -> RatMat:
        s = self.mat(x)
        return s @ s.T


@dataclass(frozen=True)
class AxiomFailure:
    tag: str
    elements: tuple[str, ...]
    got: RatMat
    want: RatMat


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    failure: AxiomFailure | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_axioms(rep: Representation) -> AxiomReport:
    """All representation axioms, exactly, in a deterministic order.

    The zero branch of the product rule and the annihilation clause are
    skipped on artifact pairs; the annihilation clause is additionally
    re-derived from the product rule as an internal cross-check.
    """
    table = rep.table
    elements = sorted(table.elements)
    zero = RatMat.zeros(rep.dim)

    def fail(tag, els, got, want):
        return AxiomReport(False, AxiomFailure(tag, tuple(els), got, want))

    for f in elements:
        s = rep.mat(f)
        if s @ s.T @ s != s:
            return fail("partial-isometry", (f,), s @ s.T @ s, s)

    for f in elements:
        for g in elements:
            prod = rep.mat(f) @ rep.mat(g)
            if (f, g) in table.composable:
                want = rep.mat(table.product[(f, g)])
                if prod != want:
                    return fail("product", (f, g), prod, want)
            elif (f, g) not in table.artifact_pairs:
                if prod != zero:
                    return fail("product-zero", (f, g), prod, zero)

    q = {f: rep.initial(f) for f in elements}
    p = {f: rep.final(f) for f in elements}
    projections = [("Q", f) for f in elements] + [("P", f) for f in elements]
    for i, (ka, a) in enumerate(projections):
        ma = q[a] if ka == "Q" else p[a]
        for kb, b in projections[i + 1 :]:
            mb = q[b] if kb == "Q" else p[b]
            if ma @ mb != mb @ ma:
                return fail(f"commute-{ka}{kb}", (a, b), ma @ mb, mb @ ma)

    for i, f in enumerate(elements):
        for g in elements[i + 1 :]:
            if intersects(table, f, g) is None:
                if p[f] @ p[g] != zero:
                    return fail("disjoint", (f, g), p[f] @ p[g], zero)

    for (f, g) in sorted(table.composable):
        if q[f] @ p[g] != p[g]:
            return fail("domination", (f, g), q[f] @ p[g], p[g])

    for f in elements:
        for g in elements:
            if (f, g) in table.composable or (f, g) in table.artifact_pairs:
                continue
            got = q[f] @ p[g]
            if got != zero:
                return fail("annihilation", (f, g), got, zero)
            derived = rep.mat(f).T @ (rep.mat(f) @ rep.mat(g)) @ rep.mat(g).T
            if derived != got:
                return fail("annihilation-derived", (f, g), derived, got)

    return AxiomReport(True)


@dataclass(frozen=True)
class TightFailure:
    required: tuple[str, ...]
    forbidden: tuple[str, ...]
    covering: tuple[str, ...]
    lhs: RatMat
    rhs: RatMat


@dataclass(frozen=True)
class TightnessReport:
    tight: bool
    failures: tuple[TightFailure, ...]
    families_checked: int
    coverings_checked: int

    def __bool__(self) -> bool:
        return self.tight


def _join(rep: Representation, members) -> RatMat:
    out = RatMat.zeros(rep.dim)
    for h in sorted(members):
        ph = rep.final(h)
        out = out + ph - out @ ph
    return out


def check_tight(
    rep: Representation, max_fg: int = 2, max_cover: int = 6
) -> TightnessReport:
    """Tightness over all selector families with up to max_fg required and
    forbidden elements; every minimal covering of each selected set is
    checked.  All failing families are collected (deterministically
    ordered), not just the first."""
    table = rep.table
    identity = RatMat.identity(rep.dim)
    active = sorted(table.elements - table.boundary)
    failures = []
    families = 0
    coverings_checked = 0
    cover_cache: dict[frozenset, list[CoverSpec]] = {}

    subsets_f = [
        frozenset(c) for size in range(1, max_fg + 1) for c in combinations(active, size)
    ]
    subsets_g = [frozenset()] + [
        frozenset(c) for size in range(1, max_fg + 1) for c in combinations(active, size)
    ]

    for required in subsets_f:
        for forbidden in subsets_g:
            families += 1
            target = common_followers(table, required, forbidden, full=True)
            if target not in cover_cache:
                cover_cache[target] = minimal_coverings(
                    table, target, max_cover, pool=target - table.boundary
                )
            rhs = identity
            for f in sorted(required):
                rhs = rhs @ rep.initial(f)
            for g in sorted(forbidden):
                rhs = rhs @ (identity - rep.initial(g))
            for spec in cover_cache[target]:
                coverings_checked += 1
                lhs = _join(rep, spec.candidate)
                if is_partition(table, spec) is True:
                    total = RatMat.zeros(rep.dim)
                    for h in sorted(spec.candidate):
                        total = total + rep.final(h)
                    if total != lhs:
                        raise SgpdError(
                            "join and sum disagree on a partition; final "
                            "projections are not orthogonal (axioms violated?)"
                        )
                if lhs != rhs:
                    failures.append(
                        TightFailure(
                            tuple(sorted(required)),
                            tuple(sorted(forbidden)),
                            tuple(sorted(spec.candidate)),
                            lhs,
                            rhs,
                        )
                    )
    return TightnessReport(not failures, tuple(failures), families, coverings_checked)


@dataclass(frozen=True)
class NonzeroSpring:
    element: str
    kind: str  # "spring" or "derived-dead"

    def __bool__(self) -> bool:
        return False


def spring_vanishing_check(rep: Representation):
    """Tight representations annihilate springs, and also the elements
    whose followers are all springs; scan for offenders directly."""
    report = find_springs(rep.table)
    for f in sorted(report.springs):
        if not rep.mat(f).is_zero():
            return NonzeroSpring(f, "spring")
    for f in sorted(report.derived_dead):
        if not rep.mat(f).is_zero():
            return NonzeroSpring(f, "derived-dead")
    return True


@dataclass(frozen=True)
class CollapseWitness:
    f: str
    g: str
    h: str
    reason: str

    def __bool__(self) -> bool:
        return False


def monic_collapse_check(rep: Representation):
    """Wherever fg = fh with g != h, the assigned matrices must already
    agree, via the recovery identity S_g = S_f* S_(fg)."""
    table = rep.table
    for f in sorted(table.elements):
        by_product: dict[str, list[str]] = {}
        for g in sorted(d_set(table, f)):
            by_product.setdefault(table.product[(f, g)], []).append(g)
        for fg, gs in sorted(by_product.items()):
            for g, h in combinations(gs, 2):
                if rep.mat(g) != rep.mat(h):
                    return CollapseWitness(f, g, h, "S_g != S_h")
                recovered = rep.mat(f).T @ rep.mat(fg)
                if rep.mat(g) != recovered:
                    return CollapseWitness(f, g, h, "S_g != S_f* S_fg")
    return True


def sole_idempotent_check(
    rep: Representation, f: str, e: str, max_fg: int = 2, max_cover: int = 6
) -> bool:
    """When the followers of f are exactly one idempotent e and the
    representation is tight, S_e is a projection equal to the initial
    projection of f.  Preconditions are enforced, tightness included."""
    table = rep.table
    if d_set(table, f, full=True) != frozenset({e}):
        raise PreconditionUnmet(f"followers of {f} are not exactly {{{e}}}")
    if table.product.get((e, e)) != e:
        raise PreconditionUnmet(f"{e} is not idempotent")
    if not check_tight(rep, max_fg, max_cover):
        raise PreconditionUnmet("representation is not tight")
    se = rep.mat(e)
    return se == se @ se and se == se.T and se == rep.initial(f)


@dataclass(frozen=True)
class CategoryFactsWitness:
    clause: str
    elements: tuple[str, ...]

    def __bool__(self) -> bool:
        return False


def _require_same_table(rep: Representation, kg: KGraph):
    if rep.table.elements != kg.table.elements or dict(rep.table.product) != dict(
        kg.table.product
    ):
        raise NotACategory("representation table does not match the category")


def category_facts_check(rep: Representation, kg: KGraph):
    """Object matrices are projections equal to their own initial and
    final projections; distinct objects are orthogonal; every morphism's
    initial projection is the final projection of its source object."""
    _require_same_table(rep, kg)
    zero = RatMat.zeros(rep.dim)
    for v in sorted(kg.objects):
        sv = rep.mat(v)
        if not (sv.is_projection() and sv == rep.final(v) and sv == rep.initial(v)):
            return CategoryFactsWitness("object-projection", (v,))
    for u, v in combinations(sorted(kg.objects), 2):
        if rep.final(u) @ rep.final(v) != zero:
            return CategoryFactsWitness("objects-orthogonal", (u, v))
    for f in sorted(kg.normal_form):
        if rep.initial(f) != rep.final(kg.source[f]):
            return CategoryFactsWitness("initial-is-source-final", (f,))
    return True


@dataclass(frozen=True)
class CategoryTightnessReport:
    tight: bool
    failures: tuple[TightFailure, ...]
    coverings_checked: int

    def __bool__(self) -> bool:
        return self.tight


def category_tightness(
    rep: Representation, kg: KGraph, max_cover: int = 6
) -> CategoryTightnessReport:
    """The per-object covering criterion: for every object v and every
    minimal covering H of its incoming morphisms, the join of final
    projections equals the final projection of v.  Under the nondegeneracy
    surrogate (the stacked columns of all matrices and their transposes
    span the space) this criterion is equivalent to full tightness."""
    _require_same_table(rep, kg)
    stacked = hstack(
        [rep.mat(f) for f in sorted(kg.normal_form)]
        + [rep.mat(f).T for f in sorted(kg.normal_form)]
    )
    if rank(stacked) != rep.dim:
        raise DegenerateRepresentation(
            f"combined ranges span rank {rank(stacked)} < dim {rep.dim}"
        )
    failures = []
    coverings_checked = 0
    table = rep.table
    for v in sorted(kg.objects):
        target = d_set(table, v)
        for spec in minimal_coverings(
            table, target, max_cover, pool=target - table.boundary
        ):
            coverings_checked += 1
            lhs = _join(rep, spec.candidate)
            rhs = rep.final(v)
            if lhs != rhs:
                failures.append(
                    TightFailure((v,), (), tuple(sorted(spec.candidate)), lhs, rhs)
                )
    return CategoryTightnessReport(not failures, tuple(failures), coverings_checked)
