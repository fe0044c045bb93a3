import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socineff.matching import hopcroft_karp, max_weight_assignment


def brute_max_matching(n_left, n_right, edges):
    edges = set(edges)
    best = 0
    for k in range(min(n_left, n_right), 0, -1):
        for lefts in itertools.combinations(range(n_left), k):
            for rights in itertools.permutations(range(n_right), k):
                if all((u, v) in edges for u, v in zip(lefts, rights)):
                    return k
    return best


class TestHopcroftKarp:
    def test_complete(self):
        assert len(hopcroft_karp(3, 3, [(i, j) for i in range(3) for j in range(3)])) == 3

    def test_empty(self):
        assert hopcroft_karp(2, 2, []) == set()

    def test_path(self):
        assert len(hopcroft_karp(2, 1, [(0, 0), (1, 0)])) == 1

    def test_needs_augmenting_path(self):
        # greedy 0-0 must be undone to match everyone
        got = hopcroft_karp(2, 2, [(0, 0), (0, 1), (1, 0)])
        assert got == {(0, 1), (1, 0)}

    def test_bad_edge(self):
        with pytest.raises(IndexError):
            hopcroft_karp(1, 1, [(0, 1)])

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 5), st.integers(0, 5), st.data())
    def test_against_brute_force(self, nl, nr, data):
        pairs = [(u, v) for u in range(nl) for v in range(nr)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        got = hopcroft_karp(nl, nr, edges)
        assert len({u for u, _ in got}) == len({v for _, v in got}) == len(got)
        assert got <= set(edges)
        assert len(got) == brute_max_matching(nl, nr, edges)


def brute_assignment(w):
    n = len(w)
    best = None
    for perm in itertools.permutations(range(n)):
        if any(w[i][perm[i]] is None for i in range(n)):
            continue
        total = sum(w[i][perm[i]] for i in range(n))
        best = total if best is None else max(best, total)
    return best


class TestHungarian:
    def test_small(self):
        w = [[Fraction(3), Fraction(1)], [Fraction(2), Fraction(2)]]
        assignment, total = max_weight_assignment(w)
        assert assignment == [0, 1] and total == 5

    def test_forbidden_edges_are_avoided(self):
        # the diagonal would be worth 100 more, but row 0 cannot take column 0
        w = [[None, Fraction(5)], [Fraction(1), Fraction(100)]]
        assignment, total = max_weight_assignment(w)
        assert assignment == [1, 0] and total == 6

    def test_no_perfect_assignment(self):
        with pytest.raises(ValueError):
            max_weight_assignment([[None, None], [Fraction(1), Fraction(1)]])

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 5), st.data())
    def test_against_brute_force(self, n, data):
        cell = st.one_of(st.none(), st.fractions(-5, 5, max_denominator=7))
        w = [[data.draw(cell) for _ in range(n)] for _ in range(n)]
        best = brute_assignment(w)
        if best is None:
            with pytest.raises(ValueError):
                max_weight_assignment(w)
            return
        assignment, total = max_weight_assignment(w)
        assert sorted(assignment) == list(range(n))
        assert total == best == sum(w[i][assignment[i]] for i in range(n))
