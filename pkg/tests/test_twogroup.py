import pytest
from hypothesis import given, strategies as st

from latinset import (
    PartialLatinSquare,
    RangeError,
    Triple,
    build_H2,
    build_H2_hat,
    build_L,
    build_P,
    double_square,
    doubling_seed,
    empty_square,
    gcs,
    has_unique_completion,
    is_critical_set,
    multi_swap_isotopism,
    build_multiswap_G,
)


def test_L_is_xor_table():
    for s in (1, 2, 3, 4):
        sq = build_L(s)
        n = 1 << s
        assert sq.order == n and sq.is_full
        for t in sq:
            assert t.sym == t.row ^ t.col


def test_L0_is_the_one_cell_square():
    sq = build_L(0)
    assert sq.order == 1 and sq.symbol_at(0, 0) == 0


def test_P_sizes_follow_the_power_rule():
    # |P_s| = 4^s - 3^s
    for s, want in [(0, 0), (1, 1), (2, 7), (3, 37), (4, 175), (5, 781)]:
        assert build_P(s).size == want


def test_P2_exact_entries():
    want = {
        (0, 0, 0), (0, 1, 1), (0, 2, 2),
        (1, 0, 1), (1, 1, 0),
        (2, 0, 2), (2, 2, 0),
    }
    assert {(t.row, t.col, t.sym) for t in build_P(2)} == want


def test_P_is_nested():
    # the top-left quadrant of P_{s+1} restricted to P_s's shape is P_s
    for s in (1, 2, 3):
        small, big = build_P(s), build_P(s + 1)
        assert small.issubset(big)


def test_P_is_critical():
    for s in (1, 2, 3):
        assert is_critical_set(build_P(s))


def test_H2_and_its_hat():
    h2, hat = build_H2(), build_H2_hat()
    assert h2.size == 7
    assert h2.issubset(hat)
    assert has_unique_completion(h2)


def test_double_of_L_is_next_L():
    assert double_square(build_L(2)) == build_L(3)
    assert double_square(build_L(3)) == build_L(4)


def test_doubling_seed_completes_to_the_double():
    # [M, C^1; C^1, C] uniquely completes to [M, M^1; M^1, M] when C
    # uniquely completes to M
    from latinset import complete_unique

    l2 = build_L(2)
    seeded = doubling_seed(l2, build_P(2))
    assert seeded.size == l2.size + 3 * build_P(2).size
    assert complete_unique(seeded) == double_square(l2)


def test_doubling_seed_validates_containment():
    from latinset import ConflictError

    other = build_L(2)
    bad = PartialLatinSquare.from_triples(4, [(0, 0, 1)])  # not a subset of L_2
    with pytest.raises(ConflictError):
        doubling_seed(other, bad)


def test_multiswap_isotopism_swaps_band_rows():
    iso = multi_swap_isotopism(8, [0])
    sq = build_L(3)
    from latinset import apply_isotopism

    swapped = apply_isotopism(sq, iso)
    assert swapped.row_entries(1) == sq.row_entries(2)
    assert swapped.row_entries(2) == sq.row_entries(1)
    # untouched band
    assert swapped.row_entries(5) == sq.row_entries(5)


def test_multiswap_empty_band_set_is_plain_P():
    assert build_multiswap_G(3, []) == build_P(3)


def test_multiswap_rejects_band_out_of_range():
    with pytest.raises(RangeError):
        build_multiswap_G(3, [2])
    with pytest.raises(RangeError):
        multi_swap_isotopism(8, [-1])


@given(st.integers(1, 4))
def test_gcs_of_L_is_P(s):
    assert gcs(build_L(s)) == build_P(s)


@given(st.integers(1, 3), st.integers(1, 3))
def test_L_blocks_are_self_similar(s, j):
    # L_{s+1} quadrants: top-left == L_s, and the off-diagonal quadrants are
    # the symbol-shifted copy
    from latinset import subsquare, rebase, shift_symbols

    big = build_L(s + 1)
    n = 1 << s
    tl = rebase(subsquare(big, 0, 0, n), 0, 0, 0, order=n)
    tr = rebase(subsquare(big, 0, n, n), 0, n, 0, order=n)
    assert tl == build_L(s)
    assert tr == shift_symbols(build_L(s), 1)
