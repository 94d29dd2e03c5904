"""Greedy extraction of critical sets.

``ggcs`` scans the occupied cells of a uniquely completable square in a
given ranking and deletes each entry whose removal keeps the completion
unique; ``gcs`` is the canonical instance on a full square with the
bottom-up ranking f0.

Two exact shortcuts keep the scan fast without changing its outcome: a
removal whose cell is immediately re-forced is always safe, and a removal
is always unsafe when the completion contains an intercalate through the
cell whose other three cells are already deleted (flipping it yields a
second completion).  Only cells deciding neither way pay for a full
backtracking count.
"""
from __future__ import annotations

import random
from typing import Optional

from .core import CellOrder, PartialLatinSquare, RangeError, Triple
from .solver import (
    NoCompletionError,
    NotUniqueError,
    NotUniquelyCompletableError,
    complete_unique,
    count_completions,
)


def cell_order_f0(n: int, literal_formula: bool = False) -> CellOrder:
    """The canonical ranking: bottom row first, each row right to left.

    ``literal_formula=True`` selects the top-down variant
    (i -> (floor((i-1)/n), (n-i) mod n)) instead; it visits rows from the
    top and generally yields different (larger) greedy outputs.
    """
    if n < 1:
        raise RangeError("order must be positive")
    cells = []
    for i in range(1, n * n + 1):
        if literal_formula:
            cells.append(((i - 1) // n, (n - i) % n))
        else:
            cells.append((n - 1 - (i - 1) // n, n - 1 - ((i - 1) % n)))
    return CellOrder(n, tuple(cells))


def random_cell_order(n: int, seed: Optional[int] = None) -> CellOrder:
    cells = [(r, c) for r in range(n) for c in range(n)]
    random.Random(seed).shuffle(cells)
    return CellOrder(n, tuple(cells))


def ggcs(square: PartialLatinSquare, ranking: CellOrder) -> PartialLatinSquare:
    """One greedy deletion pass over ``square`` in ``ranking`` order.

    The input must be uniquely completable.  The ranking must cover every
    occupied cell; extra ranked cells are ignored.  Returns the surviving
    entries — a uniquely completable subset that the scan could not shrink.
    """
    if ranking.order != square.order:
        raise RangeError("ranking is for a different order")
    shape = square.shape
    cells = [rc for rc in ranking.cells if rc in shape]
    if len(cells) != len(shape):
        missing = sorted(shape - set(ranking.cells))[:3]
        raise RangeError(f"ranking does not cover occupied cells, e.g. {missing}")
    try:
        completion = complete_unique(square)
    except (NoCompletionError, NotUniqueError) as exc:
        raise NotUniquelyCompletableError(str(exc)) from exc

    n = square.order
    full = (1 << n) - 1
    lgrid = [0] * (n * n)
    for t in completion.entries:
        lgrid[t.row * n + t.col] = t.sym
    # col_pos[c][e]: the row of symbol e in column c of the completion
    col_pos = [[0] * n for _ in range(n)]
    for t in completion.entries:
        col_pos[t.col][t.sym] = t.row
    present = bytearray(n * n)
    rows = [0] * n
    cols = [0] * n
    for t in square.entries:
        present[t.row * n + t.col] = 1
        rows[t.row] |= 1 << t.sym
        cols[t.col] |= 1 << t.sym

    for (r, c) in cells:
        idx = r * n + c
        e = lgrid[idx]
        bit = 1 << e
        # re-forced immediately: deletion cannot lose uniqueness
        if full & ~((rows[r] | cols[c]) & ~bit) == bit:
            present[idx] = 0
            rows[r] &= ~bit
            cols[c] &= ~bit
            continue
        # an intercalate through (r,c) with its other three cells free
        # witnesses a second completion: the entry must stay
        row0 = r * n
        keep = False
        for c2 in range(n):
            if c2 == c or present[row0 + c2]:
                continue
            e2 = lgrid[row0 + c2]
            r2 = col_pos[c][e2]
            if lgrid[r2 * n + c2] != e:
                continue
            if not (present[r2 * n + c] or present[r2 * n + c2]):
                keep = True
                break
        if keep:
            continue
        rest = PartialLatinSquare(
            n,
            tuple(
                Triple(i // n, i % n, lgrid[i])
                for i in range(n * n)
                if present[i] and i != idx
            ),
        )
        if count_completions(rest, cap=2) == 1:
            present[idx] = 0
            rows[r] &= ~bit
            cols[c] &= ~bit

    return PartialLatinSquare(
        n,
        tuple(
            Triple(i // n, i % n, lgrid[i]) for i in range(n * n) if present[i]
        ),
    )


def gcs(square: PartialLatinSquare, literal_formula: bool = False) -> PartialLatinSquare:
    """Greedy critical set of a full latin square under the canonical
    ranking (see ``cell_order_f0``)."""
    if not square.is_latin_square():
        raise RangeError("gcs is defined on full latin squares")
    return ggcs(square, cell_order_f0(square.order, literal_formula=literal_formula))
