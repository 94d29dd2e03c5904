from __future__ import annotations

import random

import pytest

from latinset import PartialLatinSquare


def random_full_square(order: int, rng: random.Random) -> PartialLatinSquare:
    """A uniformly-shuffled (not uniformly-distributed, but varied) full latin
    square, built by randomized row-by-row backtracking."""
    rows: list[list[int]] = []

    def extend(r: int) -> bool:
        if r == order:
            return True
        cols_used = [{rows[i][c] for i in range(r)} for c in range(order)]
        row: list[int] = []

        def fill(c: int) -> bool:
            if c == order:
                rows.append(row[:])
                if extend(r + 1):
                    return True
                rows.pop()
                return False
            options = [s for s in range(order) if s not in row and s not in cols_used[c]]
            rng.shuffle(options)
            for s in options:
                row.append(s)
                cols_used[c].add(s)
                if fill(c + 1):
                    return True
                row.pop()
                cols_used[c].remove(s)
            return False

        return fill(0)

    assert extend(0)
    return PartialLatinSquare.from_rows(rows)


def random_partial(order: int, rng: random.Random, keep: float | None = None) -> PartialLatinSquare:
    """A random partial square: a random subset of a random full square."""
    full = random_full_square(order, rng)
    if keep is None:
        keep = rng.random()
    kept = [t for t in full if rng.random() < keep]
    return PartialLatinSquare(order, kept)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)
