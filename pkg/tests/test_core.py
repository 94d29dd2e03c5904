import pytest
from hypothesis import given, strategies as st

from latinset import (
    ConflictError,
    Isotopism,
    PartialLatinSquare,
    RangeError,
    Triple,
    apply_isotopism,
    compose_blocks,
    empty_square,
    is_similar,
    precedes,
    rebase,
    row_swap_isotopism,
    shift_symbols,
    subsquare,
)

from conftest import random_full_square


def test_triple_ordering_is_row_major():
    assert precedes(Triple(0, 3, 9), Triple(1, 0, 0))
    assert precedes(Triple(2, 1, 5), Triple(2, 2, 0))
    assert not precedes(Triple(2, 2, 0), Triple(2, 1, 5))
    # bare cells compare the same way
    assert precedes((0, 3), (1, 0))


def test_duplicate_cell_rejected():
    with pytest.raises(ConflictError):
        PartialLatinSquare.from_triples(4, [(0, 0, 1), (0, 0, 2)])


def test_row_clash_rejected():
    with pytest.raises(ConflictError):
        PartialLatinSquare.from_triples(4, [(0, 0, 1), (0, 3, 1)])


def test_col_clash_rejected():
    with pytest.raises(ConflictError):
        PartialLatinSquare.from_triples(4, [(0, 2, 1), (3, 2, 1)])


def test_out_of_range_rejected():
    with pytest.raises(RangeError):
        PartialLatinSquare.from_triples(4, [(4, 0, 0)])
    with pytest.raises(RangeError):
        PartialLatinSquare.from_triples(4, [(0, -1, 0)])
    # from_triples is the strict constructor: symbols must fit the order
    with pytest.raises(RangeError):
        PartialLatinSquare.from_triples(4, [(0, 0, 4)])


def test_shifted_symbols_allowed_internally():
    # the relaxed path carries shifted blocks with symbols >= order
    p = shift_symbols(PartialLatinSquare.from_triples(2, [(0, 0, 0)]), 1)
    assert p.symbol_at(0, 0) == 2


def test_restrict_difference_issubset():
    sq = PartialLatinSquare.from_triples(3, [(0, 0, 0), (0, 1, 1), (1, 0, 1)])
    sub = sq.restrict([(0, 0), (1, 0)])
    assert set(sub) == {Triple(0, 0, 0), Triple(1, 0, 1)}
    assert sub.issubset(sq)
    assert set(sq.difference(sub)) == {Triple(0, 1, 1)}
    assert sq.remove(Triple(0, 1, 1)) == sub


def test_least_greatest_and_empty():
    sq = PartialLatinSquare.from_triples(3, [(2, 2, 0), (0, 1, 1)])
    assert sq.least() == Triple(0, 1, 1)
    assert sq.greatest() == Triple(2, 2, 0)
    assert empty_square(5).size == 0
    assert not empty_square(5).is_latin_square()


def test_compose_blocks_offsets_quadrants():
    a = PartialLatinSquare.from_rows([[0, 1], [1, 0]])
    b = shift_symbols(a, 1)
    whole = compose_blocks(a, b, b, a)
    assert whole.order == 4
    assert whole.symbol_at(0, 0) == 0
    assert whole.symbol_at(0, 2) == 2
    assert whole.symbol_at(2, 0) == 2
    assert whole.symbol_at(3, 3) == 0
    assert whole.is_latin_square()


def test_compose_blocks_rejects_mixed_orders():
    a = empty_square(2)
    with pytest.raises(RangeError):
        compose_blocks(a, a, a, empty_square(4))


def test_subsquare_rebase_inverse():
    sq = random_full_square(8, __import__("random").Random(3))
    block = subsquare(sq, 4, 2, 4)
    back = rebase(block, 4, 2, 0, order=4)
    assert back.order == 4
    assert all(0 <= t.row < 4 and 0 <= t.col < 4 for t in back)
    # rebase with negative offsets puts it back where it came from
    again = rebase(back, -4, -2, 0, order=8)
    assert set(again) == set(block)


def test_row_swap_isotopism_roundtrip():
    iso = row_swap_isotopism(8, 2, 5)
    sq = random_full_square(8, __import__("random").Random(9))
    swapped = apply_isotopism(sq, iso)
    assert swapped != sq
    assert apply_isotopism(swapped, iso) == sq  # involution
    assert apply_isotopism(swapped, iso.inverse()) == sq


def test_identity_isotopism():
    sq = random_full_square(4, __import__("random").Random(1))
    assert apply_isotopism(sq, Isotopism.identity(4)) == sq


def test_similarity_reflexive_and_shift_invariant():
    sq = PartialLatinSquare.from_triples(4, [(0, 0, 0), (1, 2, 3), (3, 3, 1)])
    assert is_similar(sq, sq) is not None
    # symbol relabelling alone preserves similarity
    relabeled = PartialLatinSquare.from_triples(4, [(0, 0, 3), (1, 2, 0), (3, 3, 2)])
    wit = is_similar(sq, relabeled)
    assert wit is not None
    assert wit.sym_map[0] == 3


def test_similarity_distinguishes_shapes():
    p = PartialLatinSquare.from_triples(4, [(0, 0, 0), (0, 1, 1)])
    q = PartialLatinSquare.from_triples(4, [(0, 0, 0), (1, 0, 1)])
    assert is_similar(p, q) is None


@given(st.integers(2, 6), st.integers(0, 2**30))
def test_random_squares_stay_latin_under_isotopism(order, seed):
    import random as _r

    sq = random_full_square(order, _r.Random(seed))
    k, kp = 0, order - 1
    swapped = apply_isotopism(sq, row_swap_isotopism(order, k, kp))
    assert swapped.is_latin_square()
    assert swapped.row_entries(k) == sq.row_entries(kp)


@given(st.integers(1, 3))
def test_shift_symbols_composes(steps):
    sq = PartialLatinSquare.from_rows([[0, 1], [1, 0]])
    once = sq
    for _ in range(steps):
        once = shift_symbols(once, 1)
    assert once == shift_symbols(sq, steps)
    with pytest.raises(RangeError):
        shift_symbols(sq, -1)
