import random

import pytest
from hypothesis import given, settings, strategies as st

from latinset import (
    NoCompletionError,
    NotUniqueError,
    PartialLatinSquare,
    StuckError,
    Triple,
    alternatives,
    build_L,
    build_P,
    complete_unique,
    completes_top_down,
    count_completions,
    empty_square,
    has_unique_completion,
    strong_complete,
    strong_complete_region,
)

from conftest import random_full_square, random_partial
from oracles import brute_count_completions


def test_count_empty_order4_is_576():
    # the number of 4x4 latin squares
    assert count_completions(empty_square(4), cap=None) == 576


def test_count_caps_early():
    assert count_completions(empty_square(4), cap=2) == 2


def test_full_square_counts_once():
    assert count_completions(build_L(3)) == 1


def test_P_uniquely_completes_to_L():
    for s in (1, 2, 3):
        p = build_P(s)
        assert has_unique_completion(p)
        assert complete_unique(p) == build_L(s)


def test_complete_unique_raises_on_ambiguity():
    with pytest.raises(NotUniqueError):
        complete_unique(empty_square(3))


def test_complete_unique_raises_when_uncompletable():
    # a latin partial square with no completion: order 3 with 0,1 fixed in
    # row 0 and 1,0 down column 2 forces a clash at (2,2)
    stuck = PartialLatinSquare.from_triples(
        3, [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 0, 1)]
    )
    if brute_count_completions(stuck) == 0:
        with pytest.raises(NoCompletionError):
            complete_unique(stuck)


def test_strong_completion_of_P_replays_to_L():
    for s in (1, 2, 3):
        trace = strong_complete(build_P(s))
        assert trace.result == build_L(s)
        # replaying the steps one forced cell at a time reproduces result
        cur = trace.start
        for step in trace.steps:
            grid = alternatives(cur)
            assert grid[(step.row, step.col)] == frozenset([step.sym])
            cur = PartialLatinSquare(cur.order, tuple(cur) + (step,))
        assert cur == trace.result


def test_strong_complete_stuck_raises():
    # two disjoint completions and no forced cell anywhere
    with pytest.raises(StuckError):
        strong_complete(empty_square(2))


def test_alternatives_region_restricts_cells():
    grid = alternatives(build_P(2), region=[(3, 3), (0, 3)])
    assert set(grid.region) == {(3, 3), (0, 3)}
    assert grid[(0, 3)] == frozenset([3])
    with pytest.raises(KeyError):
        grid[(1, 1)]


def test_strong_complete_region_only_fills_region():
    p = build_P(2)
    trace = strong_complete_region(p, rows=range(2), cols=range(4))
    assert all(t.row < 2 for t in trace.steps)
    assert p.issubset(trace.result)


def test_top_down_completion_of_P():
    ok, trace = completes_top_down(build_P(2))
    assert ok and trace.result == build_L(2)
    # rows are committed in order: row indices of steps never decrease
    rows = [t.row for t in trace.steps]
    assert rows == sorted(rows)


def test_top_down_failure_reports_partial_trace():
    # uniquely completable (it is a greedy critical set of an order-4
    # square) but row 0 is empty and nothing in it is forced at the start
    sq = PartialLatinSquare.from_triples(
        4, [(1, 0, 0), (2, 0, 1), (2, 1, 0), (3, 3, 2)]
    )
    assert has_unique_completion(sq)
    ok, trace = completes_top_down(sq)
    assert not ok
    assert trace.result.size < 16


def test_top_down_rejects_ambiguous_squares():
    from latinset import NotUniquelyCompletableError

    with pytest.raises(NotUniquelyCompletableError):
        completes_top_down(PartialLatinSquare.from_triples(4, [(3, 3, 3)]))


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**30))
def test_counting_matches_brute_force(order, seed):
    # sparse squares at order 6+ have astronomically many completions, so
    # exact counts are compared at order <= 5 and capped counts at order 6
    sq = random_partial(order, random.Random(seed), keep=0.4 + order / 10)
    assert count_completions(sq, cap=None) == brute_count_completions(sq)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**30), st.integers(1, 40))
def test_capped_counting_matches_brute_force_order6(seed, cap):
    sq = random_partial(6, random.Random(seed), keep=0.5)
    assert count_completions(sq, cap=cap) == brute_count_completions(sq, cap=cap)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**30))
def test_uniqueness_matches_brute_force(order, seed):
    sq = random_partial(order, random.Random(seed), keep=0.75)
    assert has_unique_completion(sq) == (brute_count_completions(sq, cap=2) == 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**30))
def test_strong_completion_implies_unique(order, seed):
    sq = random_partial(order, random.Random(seed), keep=0.8)
    try:
        trace = strong_complete(sq)
    except StuckError:
        return
    assert trace.result.is_latin_square()
    assert has_unique_completion(sq)
    assert complete_unique(sq) == trace.result
