from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from hallpaige.exact_cover import BudgetExceeded, ExactCover, SearchStats
from hallpaige.matching import maximum_matching

# Knuth's running example: the unique cover is rows 0, 3, 4
KNUTH_ROWS = [(2, 4, 5), (0, 3, 6), (1, 2, 5), (0, 3), (1, 6), (3, 4, 6)]


def brute_covers(n_columns, rows):
    out = []
    for k in range(len(rows) + 1):
        for pick in itertools.combinations(range(len(rows)), k):
            cols = [c for r in pick for c in rows[r]]
            if sorted(cols) == list(range(n_columns)):
                out.append(list(pick))
    return sorted(out)


def test_knuth_example():
    ec = ExactCover(7, KNUTH_ROWS)
    assert list(ec.solutions()) == [[0, 3, 4]]
    assert ec.first_solution() == [0, 3, 4]


def test_no_columns_has_empty_cover():
    assert list(ExactCover(0, []).solutions()) == [[]]


def test_uncoverable_column():
    stats = SearchStats()
    assert ExactCover(3, [(0, 1)]).first_solution(stats=stats) is None


def test_bad_column_index():
    with pytest.raises(ValueError, match="outside"):
        ExactCover(2, [(0, 5)])


def test_select_forces_row():
    rows = [(0,), (1,), (0, 1)]
    ec = ExactCover(2, rows)
    assert sorted(ec.solutions()) == [[0, 1], [2]]
    ec.select(2)
    assert list(ec.solutions()) == [[]]


def test_budget_and_reuse():
    ec = ExactCover(7, KNUTH_ROWS)
    with pytest.raises(BudgetExceeded):
        list(ec.solutions(budget=1))
    # links are restored after the aborted run
    assert list(ec.solutions()) == [[0, 3, 4]]


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.sets(st.integers(0, n - 1), min_size=1), max_size=9))))
def test_covers_match_brute_force(case):
    n, rows = case
    rows = [tuple(sorted(r)) for r in rows]
    assert sorted(ExactCover(n, rows).solutions()) == brute_covers(n, rows)


def brute_matching_size(adj, n_right):
    best = 0
    for k in range(len(adj), 0, -1):
        for left in itertools.combinations(range(len(adj)), k):
            for right in itertools.permutations(range(n_right), k):
                if all(r in adj[u] for u, r in zip(left, right)):
                    return k
    return best


def test_perfect_matching_small():
    adj = [[0, 1], [0], [1, 2]]
    m = maximum_matching(adj, 3)
    assert m == [1, 0, 2]


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, n - 1), unique=True), min_size=1, max_size=5).map(lambda a: (n, a))))
def test_matching_is_maximum(case):
    n_right, adj = case
    m = maximum_matching(adj, n_right)
    used = [r for r in m if r >= 0]
    assert len(used) == len(set(used))
    assert all(r == -1 or r in adj[u] for u, r in enumerate(m))
    assert len(used) == brute_matching_size(adj, n_right)
