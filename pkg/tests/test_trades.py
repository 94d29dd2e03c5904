import random

import pytest
from hypothesis import given, settings, strategies as st

from latinset import (
    IdenticalSquaresError,
    Intercalate,
    PartialLatinSquare,
    RangeError,
    Triple,
    apply_isotopism,
    build_L,
    build_P,
    enumerate_intercalates,
    gcs,
    intercalate_witness,
    is_2_critical,
    is_trade_pair,
    row_swap_isotopism,
    trade_from_squares,
    verify_gcs_characterization,
)

from conftest import random_full_square


def test_L2_has_exactly_12_intercalates():
    # of the 36 row-pair x col-pair choices only those with
    # r1^r2 == c1^c2 close into a 2x2 subsquare
    inter = enumerate_intercalates(build_L(2))
    assert len(inter) == 12
    assert len(set(inter)) == 12


def test_every_intercalate_is_a_trade():
    for inter in enumerate_intercalates(build_L(2)):
        t, tp = inter.as_trade(4)
        assert is_trade_pair(t, tp)


def test_intercalate_triples_and_flip():
    inter = Intercalate((0, 1), (0, 1), (0, 1))
    assert set(inter.triples()) == {
        Triple(0, 0, 0), Triple(0, 1, 1), Triple(1, 0, 1), Triple(1, 1, 0)
    }
    assert inter.flipped().flipped() == inter
    assert inter.least() == Triple(0, 0, 0)


def test_intercalate_validates_shape():
    with pytest.raises(RangeError):
        Intercalate((1, 0), (0, 1), (0, 1))
    with pytest.raises(RangeError):
        Intercalate((0, 1), (0, 1), (2, 2))


def test_trade_pair_axioms():
    # same shape, disagree everywhere on the shape, same row/col content
    t = PartialLatinSquare.from_triples(4, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
    tp = PartialLatinSquare.from_triples(4, [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
    assert is_trade_pair(t, tp)
    # same square is not a trade
    assert not is_trade_pair(t, t)
    # shape mismatch is not a trade
    assert not is_trade_pair(t, PartialLatinSquare.from_triples(4, [(0, 0, 1)]))


def test_trade_from_squares_extracts_disagreement():
    l = build_L(2)
    lp = apply_isotopism(l, row_swap_isotopism(4, 0, 1))
    t, tp = trade_from_squares(l, lp)
    assert is_trade_pair(t, tp)
    assert t.issubset(l) and tp.issubset(lp)
    assert set(t.shape) == {(0, c) for c in range(4)} | {(1, c) for c in range(4)}


def test_trade_from_identical_squares_raises():
    with pytest.raises(IdenticalSquaresError):
        trade_from_squares(build_L(2), build_L(2))


def test_witness_for_every_P2_entry():
    p, l = build_P(2), build_L(2)
    for entry in p:
        wit = intercalate_witness(l, p, entry)
        assert wit is not None
        # the witness meets the critical set exactly in this entry
        hits = set(wit.triples()) & set(p)
        assert hits == {entry}


def test_witness_least_entry_requirement():
    p, l = build_P(2), build_L(2)
    for entry in p:
        wit = intercalate_witness(l, p, entry, require_least=True)
        assert wit is not None
        assert wit.least() == entry or min(wit.triples()) == entry


def test_2_critical_P2():
    assert is_2_critical(build_P(2), build_L(2))


def test_2_critical_rejects_non_subset():
    other = PartialLatinSquare.from_triples(4, [(0, 0, 1)])
    with pytest.raises(RangeError):
        is_2_critical(other, build_L(2))


def test_gcs_characterization_on_P():
    for s in (2, 3):
        assert verify_gcs_characterization(build_P(s), build_L(s))


def test_characterization_fails_for_padded_set():
    # adding a redundant entry to P_2 breaks minimality
    p, l = build_P(2), build_L(2)
    extra = next(t for t in l if t not in p)
    padded = PartialLatinSquare(4, tuple(p) + (extra,))
    assert not verify_gcs_characterization(padded, l)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**30))
def test_intercalates_of_random_squares_are_trades(seed):
    sq = random_full_square(6, random.Random(seed))
    for inter in enumerate_intercalates(sq)[:20]:
        for t in inter.triples():
            assert sq.symbol_at(t.row, t.col) == t.sym
        a, b = inter.as_trade(6)
        assert is_trade_pair(a, b)
