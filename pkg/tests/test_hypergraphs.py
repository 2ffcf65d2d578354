"""Ground sets, downward-closed hypergraphs, subset streams, colorful
selections."""

from __future__ import annotations

from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, strategies as st

import hellylab as hl
from hellylab.bitsets import lex_less, mask_of, subsets_lex, tuple_of
from hellylab.errors import InputError
from hellylab.hypergraphs import ExplicitHypergraph, GroundSet, antichain_reduce

from conftest import random_hypergraph


def hg(n, *edges):
    return ExplicitHypergraph(GroundSet(n), tuple(frozenset(e) for e in edges))


class TestContains:
    def test_downward_closure(self):
        h = hg(4, {0, 1, 2})
        assert h.contains({0, 1})

    def test_vertex_outside_all_edges(self):
        h = hg(4, {0, 1, 2})
        assert not h.contains({0, 3})

    def test_empty_set_convention(self):
        h = hg(4, {0, 1, 2})
        assert h.contains(set())
        assert not hg(4).contains(set())  # no maximal edges: no edges at all

    def test_out_of_range_vertex(self):
        h = hg(4, {0, 1, 2})
        with pytest.raises(InputError):
            h.contains({0, 7})

    @given(st.integers(0, 200))
    def test_monotone_under_subsets(self, seed):
        import random

        rng = random.Random(seed)
        h = random_hypergraph(6, seed)
        s = frozenset(rng.sample(range(6), rng.randint(0, 6)))
        t = frozenset(v for v in s if rng.random() < 0.6)
        if h.contains(s):
            assert h.contains(t)


class TestAntichain:
    def test_nested_edges_rejected(self):
        with pytest.raises(InputError):
            hg(4, {0, 1}, {0, 1, 2})

    def test_from_edges_reduces(self):
        h = ExplicitHypergraph.from_edges(
            GroundSet(4), [{0, 1}, {0, 1, 2}, {3}, {3}]
        )
        assert h.maximal_edges == (frozenset({0, 1, 2}), frozenset({3}))

    def test_antichain_reduce_keeps_incomparable(self):
        out = antichain_reduce([frozenset({0, 1}), frozenset({1, 2})])
        assert len(out) == 2


class TestKSubsets:
    def test_lex_order(self):
        got = [tuple(sorted(s)) for s in hl.k_subsets({0, 1, 2}, 2)]
        assert got == [(0, 1), (0, 2), (1, 2)]

    def test_k_zero(self):
        assert list(hl.k_subsets({0, 1, 2}, 0)) == [frozenset()]

    def test_count(self):
        assert sum(1 for _ in hl.k_subsets(range(6), 3)) == 20

    def test_k_too_large_is_empty(self):
        assert list(hl.k_subsets({0, 1}, 3)) == []

    @given(st.integers(1, 8), st.integers(0, 8))
    def test_counts_match_binomial(self, n, k):
        assert sum(1 for _ in hl.k_subsets(range(n), k)) == (
            comb(n, k) if k <= n else 0
        )


class TestColorfulSelections:
    def test_disjoint_singletons(self):
        got = list(hl.colorful_selections(hl.ColorClasses.of({0}, {1})))
        assert got == [frozenset({0, 1})]

    def test_shared_vertex(self):
        got = list(hl.colorful_selections(hl.ColorClasses.of({0}, {0})))
        assert got == [frozenset({0})]

    def test_overlapping_pair(self):
        got = {tuple(sorted(s)) for s in
               hl.colorful_selections(hl.ColorClasses.of({0, 1}, {1, 2}))}
        assert got == {(0, 1), (0, 2), (1,), (1, 2)}

    def test_empty_class_rejected(self):
        with pytest.raises(InputError):
            hl.ColorClasses.of({0}, set())

    @given(st.data())
    def test_matches_product_images(self, data):
        k = data.draw(st.integers(1, 4))
        classes = [
            data.draw(st.sets(st.integers(0, 5), min_size=1, max_size=4))
            for _ in range(k)
        ]
        expected = {frozenset(pick) for pick in product(*classes)}
        got = list(hl.colorful_selections(hl.ColorClasses.of(*classes)))
        assert set(got) == expected
        assert len(got) == len(expected)  # no duplicates


class TestLexConventions:
    def test_subsets_lex_is_tuple_sorted(self):
        got = list(subsets_lex(range(3)))
        assert got == sorted(got)
        assert len(got) == 8

    def test_lex_less_matches_tuples_on_equal_size(self):
        for a in combinations(range(5), 2):
            for b in combinations(range(5), 2):
                am, bm = mask_of(a), mask_of(b)
                assert lex_less(am, bm) == (a < b)

    def test_tuple_roundtrip(self):
        assert tuple_of(mask_of((0, 3, 5))) == (0, 3, 5)
