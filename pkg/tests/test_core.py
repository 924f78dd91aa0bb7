import random

import pytest

from sgpd.core import (
    UNIT,
    MalformedTable,
    NotComposable,
    SemigroupoidTable,
    UnknownElement,
    common_followers,
    compose,
    d_set,
    divides,
    equivalent,
    intersects,
    is_monic,
    validate_associativity,
)
from sgpd.markov import Matrix01, build_markov, enumerate_words, word_token

from conftest import random_dag_table


def brute_words(matrix, max_len):
    """Independent word enumeration by letter product filtering."""
    from itertools import product as iproduct

    out = []
    for n in range(1, max_len + 1):
        for combo in iproduct(matrix.alphabet, repeat=n):
            if all(matrix.entry(a, b) == 1 for a, b in zip(combo, combo[1:])):
                out.append(combo)
    return out


class TestValidate:
    def test_markov_truncation_passes(self, golden):
        table = build_markov(golden, 3).table
        assert validate_associativity(table).ok

    def test_single_element_vacuous(self, fix_e):
        report = validate_associativity(fix_e)
        assert report.ok and report.checked_triples == 0

    def test_missing_pair_detected_case_i(self):
        # (f,g) and (g,h) composable but (fg,h) removed
        elements = {"f", "g", "h", "fg", "gh", "fgh"}
        product = {
            ("f", "g"): "fg",
            ("g", "h"): "gh",
            ("f", "gh"): "fgh",
            ("fg", "h"): "fgh",
        }
        assert validate_associativity(SemigroupoidTable(frozenset(elements), product)).ok
        del product[("fg", "h")]
        report = validate_associativity(SemigroupoidTable(frozenset(elements), product))
        assert not report.ok
        assert report.violation.case == "i"
        assert report.violation.triple == ("f", "g", "h")
        assert report.violation.pair == ("fg", "h")

    def test_unequal_products_detected(self):
        elements = {"f", "g", "h", "fg", "gh", "x", "y"}
        product = {
            ("f", "g"): "fg",
            ("g", "h"): "gh",
            ("f", "gh"): "x",
            ("fg", "h"): "y",
        }
        report = validate_associativity(SemigroupoidTable(frozenset(elements), product))
        assert not report.ok
        assert report.violation.kind == "unequal-products"
        assert report.violation.products == ("y", "x")

    def test_malformed_product_rejected(self):
        with pytest.raises(MalformedTable):
            SemigroupoidTable(frozenset({"f"}), {("f", "f"): "ghost"})
        with pytest.raises(MalformedTable):
            SemigroupoidTable(frozenset({"f"}), {("f", "g"): "f"})


class TestCompose:
    def test_concatenation(self, golden):
        table = build_markov(golden, 2).table
        assert compose(table, "1", "2") == "12"

    def test_unit_identity(self, golden):
        table = build_markov(golden, 2).table
        assert compose(table, UNIT, "1") == "1"
        assert compose(table, "1", UNIT) == "1"
        assert compose(table, UNIT, UNIT) is UNIT

    def test_forbidden_junction(self, golden):
        table = build_markov(golden, 2).table
        with pytest.raises(NotComposable):
            compose(table, "2", "2")

    def test_artifact_pair_reported_as_bound(self, golden):
        table = build_markov(golden, 2).table
        with pytest.raises(NotComposable, match="truncation bound"):
            compose(table, "1", "12")

    def test_unknown_element(self, golden):
        table = build_markov(golden, 2).table
        with pytest.raises(UnknownElement):
            compose(table, "1", "zzz")


class TestDSet:
    def test_followers_of_letter_by_enumeration(self, golden):
        trunc = build_markov(golden, 3)
        # brute force: all words starting with a letter of row 2's support
        expected = {
            word_token(golden, w)
            for w in brute_words(golden, 3)
            if golden.entry("2", w[0]) == 1
        }
        assert d_set(trunc.table, "2", full=True) == expected
        assert expected == {
            word_token(golden, w) for w in brute_words(golden, 3) if w[0] == "1"
        }

    def test_unit_gets_everything(self, golden):
        table = build_markov(golden, 2).table
        assert d_set(table, UNIT) == table.elements

    def test_zero_row_has_no_followers(self, dead_row):
        table = build_markov(dead_row, 3).table
        assert d_set(table, "2", full=True) == frozenset()

    def test_in_table_is_bounded(self, golden):
        trunc = build_markov(golden, 3)
        # within the table, followers of "2" may spend at most 2 letters
        assert d_set(trunc.table, "2") == {"1", "11", "12"}


class TestDivision:
    def test_reflexive(self, golden):
        table = build_markov(golden, 3).table
        assert all(divides(table, f, f) for f in table.elements)

    def test_prefix_divides(self, golden):
        table = build_markov(golden, 2).table
        assert divides(table, "1", "12")

    def test_brute_force_agreement(self, golden):
        table = build_markov(golden, 3).table
        for f in sorted(table.elements):
            for g in sorted(table.elements):
                brute = f == g or any(
                    table.product.get((f, h)) == g for h in sorted(table.elements)
                )
                assert divides(table, f, g) == brute

    def test_incomparable_words(self, golden):
        table = build_markov(golden, 2).table
        assert not divides(table, "12", "21")

    def test_equivalent_examples(self, golden, fix_c):
        table = build_markov(golden, 2).table
        assert equivalent(table, "1", "1")
        assert not equivalent(table, "1", "12")
        assert not equivalent(fix_c.table, "v", "e")


class TestIntersects:
    def test_self_witness(self, golden):
        table = build_markov(golden, 2).table
        assert intersects(table, "1", "1") == "1"

    def test_prefix_pair(self, golden):
        table = build_markov(golden, 2).table
        m = intersects(table, "1", "12")
        assert m is not None and divides(table, "1", m) and divides(table, "12", m)

    def test_distinct_letters_disjoint(self, golden):
        table = build_markov(golden, 3).table
        assert intersects(table, "1", "2") is None

    def test_symmetry(self, golden):
        table = build_markov(golden, 3).table
        for f in sorted(table.elements):
            for g in sorted(table.elements):
                assert (intersects(table, f, g) is None) == (
                    intersects(table, g, f) is None
                )


class TestMonic:
    def test_words_are_monic(self, golden):
        table = build_markov(golden, 3).table
        assert all(is_monic(table, f) is True for f in table.elements)

    def test_collapse_witness(self, fix_f):
        witness = is_monic(fix_f, "f")
        assert not witness
        assert (witness.g, witness.h) == ("g", "h")
        assert witness.product == "m"

    def test_vacuous(self, fix_e):
        assert is_monic(fix_e, "f") is True


class TestCommonFollowers:
    def test_empty_selectors_select_all(self, golden):
        table = build_markov(golden, 2).table
        assert common_followers(table, (), ()) == table.elements

    def test_full_row_selects_everything(self, golden):
        table = build_markov(golden, 2).table
        assert common_followers(table, ("1",), (), full=True) == table.elements

    def test_self_complement_empty(self, golden):
        table = build_markov(golden, 2).table
        assert common_followers(table, ("1",), ("1",)) == frozenset()

    def test_unit_in_required_is_neutral(self, golden):
        table = build_markov(golden, 2).table
        assert common_followers(table, ("1", UNIT), ()) == common_followers(
            table, ("1",), ()
        )

    def test_unit_in_forbidden_empties(self, golden):
        table = build_markov(golden, 2).table
        assert common_followers(table, (), (UNIT,)) == frozenset()


class TestDivisionLaws:
    def test_laws_on_random_tables(self):
        rng = random.Random(20240)
        for _ in range(40):
            table = random_dag_table(rng, max_elements=7)
            els = sorted(table.elements)
            for f in els:
                assert divides(table, f, f)
            for f in els:
                for g in els:
                    for h in els:
                        if divides(table, f, g) and divides(table, g, h):
                            assert divides(table, f, h)
            for (k, f) in sorted(table.composable):
                for g in els:
                    if divides(table, f, g):
                        assert (k, g) in table.composable
                        assert divides(
                            table, table.product[(k, f)], table.product[(k, g)]
                        )

    def test_follower_transfer_under_composition(self):
        rng = random.Random(99)
        for _ in range(25):
            table = random_dag_table(rng, max_elements=7)
            for (f, g) in table.composable:
                assert d_set(table, table.product[(f, g)]) == d_set(table, g)

    def test_follower_transfer_on_truncation_full_sets(self, golden):
        trunc = build_markov(golden, 3)
        table = trunc.table
        for (f, g) in table.composable:
            assert d_set(table, table.product[(f, g)], full=True) == d_set(
                table, g, full=True
            )

    def test_equivalence_relation_laws(self):
        rng = random.Random(606)
        for _ in range(25):
            table = random_dag_table(rng, max_elements=6)
            els = sorted(table.elements)
            for f in els:
                assert equivalent(table, f, f)
            for f in els:
                for g in els:
                    assert equivalent(table, f, g) == equivalent(table, g, f)
                    for h in els:
                        if equivalent(table, f, g) and equivalent(table, g, h):
                            assert equivalent(table, f, h)
