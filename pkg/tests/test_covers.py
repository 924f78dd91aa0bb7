import random
from itertools import chain, combinations

import pytest

from sgpd.core import SemigroupoidTable, d_set, intersects
from sgpd.covers import (
    BoundExceededError,
    CandidateNotSubset,
    CoverSpec,
    NotACovering,
    check_maximality,
    is_covering,
    is_partition,
    minimal_coverings,
    prune_covering,
)
from sgpd.markov import build_markov

from conftest import random_dag_table


def subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


@pytest.fixture(scope="module")
def golden2(golden):
    return build_markov(golden, 2).table


class TestIsCovering:
    def test_letters_cover_all_words(self, golden2):
        spec = CoverSpec(golden2.elements, frozenset({"1", "2"}))
        assert is_covering(golden2, spec) is True

    def test_empty_covers_empty(self, golden2):
        assert is_covering(golden2, CoverSpec(frozenset(), frozenset())) is True

    def test_uncovered_witness(self, golden2):
        verdict = is_covering(golden2, CoverSpec(golden2.elements, frozenset({"2"})))
        assert not verdict
        assert verdict.element == "1"

    def test_candidate_subset_enforced(self, golden2):
        with pytest.raises(CandidateNotSubset):
            CoverSpec(frozenset({"1"}), frozenset({"2"}))


class TestIsPartition:
    def test_letters_partition(self, golden2):
        assert is_partition(golden2, CoverSpec(golden2.elements, frozenset({"1", "2"}))) is True

    def test_intersecting_pair_witness(self, golden2):
        verdict = is_partition(golden2, CoverSpec(golden2.elements, frozenset({"1", "12"})))
        assert not verdict
        assert (verdict.a, verdict.b) == ("1", "12")

    def test_empty(self, golden2):
        assert is_partition(golden2, CoverSpec(frozenset(), frozenset())) is True


class TestMaximality:
    def test_letters_maximal(self, golden2):
        assert check_maximality(golden2, golden2.elements, {"1", "2"}) is True

    def test_single_letter_not_maximal(self, golden2):
        assert check_maximality(golden2, golden2.elements, {"1"}) is False

    def test_empty_over_empty(self, golden2):
        assert check_maximality(golden2, frozenset(), frozenset()) is True

    def test_rejects_intersecting_antichain(self, golden2):
        with pytest.raises(NotACovering):
            check_maximality(golden2, golden2.elements, {"1", "12"})

    def test_equivalence_with_is_partition_exhaustive(self):
        rng = random.Random(5050)
        for _ in range(12):
            table = random_dag_table(rng, max_elements=5)
            for target in subsets(table.elements):
                target = frozenset(target)
                for cand in subsets(target):
                    cand = frozenset(cand)
                    pairwise_disjoint = all(
                        intersects(table, a, b) is None
                        for a, b in combinations(sorted(cand), 2)
                    )
                    if not pairwise_disjoint:
                        continue
                    part = is_partition(table, CoverSpec(target, cand)) is True
                    maximal = check_maximality(table, target, cand)
                    assert part == maximal


class TestPrune:
    def test_removes_multiples(self, golden2):
        spec = CoverSpec(golden2.elements, frozenset({"1", "12", "2"}))
        assert prune_covering(golden2, spec).candidate == {"1", "2"}

    def test_division_free_unchanged(self, golden2):
        spec = CoverSpec(golden2.elements, frozenset({"1", "2"}))
        assert prune_covering(golden2, spec).candidate == {"1", "2"}

    def test_iterated_removal(self, golden2):
        spec = CoverSpec(golden2.elements, frozenset({"11", "12", "2", "1"}))
        assert prune_covering(golden2, spec).candidate == {"1", "2"}

    def test_requires_covering(self, golden2):
        with pytest.raises(NotACovering):
            prune_covering(golden2, CoverSpec(golden2.elements, frozenset({"2"})))

    def test_idempotent_and_division_free(self, golden2):
        spec = CoverSpec(golden2.elements, frozenset({"1", "12", "21", "2"}))
        once = prune_covering(golden2, spec)
        assert prune_covering(golden2, once).candidate == once.candidate
        members = sorted(once.candidate)
        for a in members:
            for b in members:
                if a != b:
                    from sgpd.core import divides

                    assert not divides(golden2, a, b)


class TestMinimalCoverings:
    def test_cycle_singletons(self, fix_c):
        target = d_set(fix_c.table, "v")
        specs = minimal_coverings(fix_c.table, target)
        candidates = [set(s.candidate) for s in specs]
        assert {"v"} in candidates and {"e"} in candidates

    def test_empty_target(self, golden2):
        specs = minimal_coverings(golden2, frozenset())
        assert len(specs) == 1 and specs[0].candidate == frozenset()

    def test_letter_partition_found(self, golden2):
        specs = minimal_coverings(golden2, golden2.elements, max_size=3)
        assert {"1", "2"} in [set(s.candidate) for s in specs]

    def test_all_results_are_minimal_coverings(self, golden2):
        specs = minimal_coverings(golden2, golden2.elements, max_size=3)
        for spec in specs:
            assert is_covering(golden2, spec) is True
            for h in spec.candidate:
                smaller = CoverSpec(spec.target, spec.candidate - {h})
                assert is_covering(golden2, smaller) is not True

    def test_bound_exceeded_is_loud(self):
        table = SemigroupoidTable.build({"a", "b", "c"}, {})
        with pytest.raises(BoundExceededError) as info:
            minimal_coverings(table, table.elements, max_size=2)
        assert info.value.oversized == ["a", "b", "c"]

    def test_empty_pool_means_no_coverings(self, golden2):
        specs = minimal_coverings(golden2, frozenset({"1"}), pool=frozenset())
        assert specs == []

    def test_superset_of_covering_still_covers(self, golden2):
        specs = minimal_coverings(golden2, golden2.elements, max_size=3)
        for spec in specs:
            for extra in sorted(golden2.elements - spec.candidate):
                bigger = CoverSpec(spec.target, spec.candidate | {extra})
                assert is_covering(golden2, bigger) is True

    def test_deterministic_order(self, golden2):
        a = minimal_coverings(golden2, golden2.elements, max_size=3)
        b = minimal_coverings(golden2, golden2.elements, max_size=3)
        assert [tuple(sorted(s.candidate)) for s in a] == [
            tuple(sorted(s.candidate)) for s in b
        ]
