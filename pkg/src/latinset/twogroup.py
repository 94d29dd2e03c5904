"""Squares built from the elementary abelian 2-group: the XOR square L_s of
order 2^s, its nested greedy critical set P_s, the order-doubling product,
and the multi-swap construction assembled from the order-4 seeds H_2 and
its completion.
"""
from __future__ import annotations

from typing import Iterable

from .core import (
    ConflictError,
    PartialLatinSquare,
    RangeError,
    Triple,
    compose_blocks,
    empty_square,
    is_similar,
    shift_symbols,
    subsquare,
)

#: The seven entries of the order-4 seed used for swapped blocks.
_H2_TRIPLES = ((0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))

#: Its unique completion (row 1 and row 2 of the XOR square exchanged).
_H2_HAT_ROWS = ((0, 1, 2, 3), (2, 3, 0, 1), (1, 0, 3, 2), (3, 2, 1, 0))


def build_L(s: int) -> PartialLatinSquare:
    """The order-2^s square of the abelian 2-group, built by the product
    recursion L_s = [L_{s-1}, L^1; L^1, L] (entrywise this is i XOR j)."""
    if s < 0:
        raise RangeError("s must be non-negative")
    if s == 0:
        return PartialLatinSquare(1, (Triple(0, 0, 0),))
    prev = build_L(s - 1)
    up = shift_symbols(prev, 1)
    return compose_blocks(prev, up, up, prev)


def build_P(s: int) -> PartialLatinSquare:
    """The nested greedy critical set P_s = [L_{s-1}, P^1_{s-1}; P^1_{s-1},
    P_{s-1}], of size 4^s - 3^s."""
    if s < 0:
        raise RangeError("s must be non-negative")
    if s == 0:
        return empty_square(1)
    prev = build_P(s - 1)
    up = shift_symbols(prev, 1)
    return compose_blocks(build_L(s - 1), up, up, prev)


def double_square(square: PartialLatinSquare) -> PartialLatinSquare:
    """The product with the order-2 group: [M, M^1; M^1, M]."""
    up = shift_symbols(square, 1)
    return compose_blocks(square, up, up, square)


def doubling_seed(
    square: PartialLatinSquare, seed: PartialLatinSquare
) -> PartialLatinSquare:
    """[M, C^1; C^1, C] for C a subset of M — the seed whose unique
    completion is double_square(M) whenever C uniquely completes to M."""
    if seed.order != square.order:
        raise RangeError("seed and square must have the same order")
    if not seed.issubset(square):
        raise ConflictError("seed is not contained in the square")
    up = shift_symbols(seed, 1)
    return compose_blocks(square, up, up, seed)


def build_H2() -> PartialLatinSquare:
    return PartialLatinSquare.from_triples(4, _H2_TRIPLES)


def build_H2_hat() -> PartialLatinSquare:
    return PartialLatinSquare.from_rows(_H2_HAT_ROWS)


def build_multiswap_G(s: int, band_indices: Iterable[int]) -> PartialLatinSquare:
    """The multi-swap critical set for the square obtained from L_s by
    exchanging rows 4k+1 and 4k+2 for each k in band_indices.

    Blockwise over the 4x4 coset blocks: bands without a swap copy P_s;
    in swapped bands a full block becomes a relabelled completion of the
    seed and a partial block becomes the relabelled seed itself, the
    relabelling being the block's own symbol coset.
    """
    if s < 2:
        raise RangeError("multi-swap squares need order >= 4 (s >= 2)")
    bands = sorted(set(band_indices))
    n_bands = 1 << (s - 2)
    for k in bands:
        if not (0 <= k < n_bands):
            raise RangeError(f"band index {k} outside 0..{n_bands - 1}")
    n = 1 << s
    big_l = build_L(s)
    big_p = build_P(s)
    l_cells = big_l.cell_map()
    l2 = build_L(2)
    h2 = build_H2()
    h2_hat = build_H2_hat()
    swapped = set(bands)
    triples: list[Triple] = []
    for i in range(0, n, 4):
        if i // 4 not in swapped:
            triples.extend(
                t for t in big_p.entries if i <= t.row < i + 4
            )
            continue
        for j in range(0, n, 4):
            base = l_cells[(i, j)] & ~3  # symbol coset of this block
            block = subsquare(big_l, i, j, 4)
            coset = PartialLatinSquare(
                4, tuple(Triple(t.row - i, t.col - j, t.sym - base) for t in block.entries)
            )
            if is_similar(coset, l2) is None:
                raise ConflictError(f"block at ({i},{j}) is not a relabelled L_2")
            p_block = subsquare(big_p, i, j, 4)
            seed = h2_hat if p_block.size == 16 else h2
            triples.extend(
                Triple(t.row + i, t.col + j, t.sym + base) for t in seed.entries
            )
    return PartialLatinSquare(n, tuple(triples))
