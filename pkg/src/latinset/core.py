"""Partial latin squares as triple sets, with the block algebra used by the
recursive constructions: symbol shifts, 2x2 block composition, subsquare
extraction, isotopisms and the monotone-similarity test.

A partial latin square of order n is a set of triples (row, col, sym) with
rows and cols in [0, n) such that no cell, row-symbol or column-symbol pair
repeats.  Symbols are any non-negative integers: shifted blocks such as P^1
legitimately carry symbols >= n.  The strict constructor ``from_triples``
additionally enforces sym < n for user-supplied squares.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Sequence


class LatinSetError(Exception):
    """Base class for all errors raised by this package."""


class ConflictError(LatinSetError):
    """Two triples clash in a cell, a row-symbol pair or a column-symbol pair."""


class RangeError(LatinSetError):
    """An index or symbol lies outside its permitted range."""


class EmptySquareError(LatinSetError):
    """An operation that needs at least one entry was given an empty square."""


class Triple(NamedTuple):
    row: int
    col: int
    sym: int

    def __str__(self) -> str:
        return f"({self.row},{self.col};{self.sym})"


def precedes(a: Triple | tuple[int, int], b: Triple | tuple[int, int]) -> bool:
    """Cell order used throughout: a comes no later than b.

    (x, y) precedes (r, s) iff x < r, or x == r and y <= s.  Symbols are
    ignored; the relation is total on cells and reflexive.
    """
    return a[0] < b[0] or (a[0] == b[0] and a[1] <= b[1])


def _cell_key(t: Triple) -> tuple[int, int]:
    return (t.row, t.col)


@dataclass(frozen=True)
class PartialLatinSquare:
    """An immutable partial latin square.

    ``entries`` is kept sorted by (row, col); construction validates the
    latin conditions and index ranges.  Use ``from_triples`` for strict
    symbol-range checking of external data.
    """

    order: int
    entries: tuple[Triple, ...]

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise RangeError(f"order must be positive, got {n}")
        triples = tuple(sorted((Triple(*t) for t in self.entries), key=_cell_key))
        object.__setattr__(self, "entries", triples)
        seen_cells: set[tuple[int, int]] = set()
        seen_rows: set[tuple[int, int]] = set()
        seen_cols: set[tuple[int, int]] = set()
        for t in triples:
            if not (0 <= t.row < n and 0 <= t.col < n):
                raise RangeError(f"cell of {t} outside order-{n} square")
            if t.sym < 0:
                raise RangeError(f"negative symbol in {t}")
            if (t.row, t.col) in seen_cells:
                raise ConflictError(f"duplicate cell ({t.row},{t.col})")
            if (t.row, t.sym) in seen_rows:
                raise ConflictError(f"symbol {t.sym} repeated in row {t.row}")
            if (t.col, t.sym) in seen_cols:
                raise ConflictError(f"symbol {t.sym} repeated in column {t.col}")
            seen_cells.add((t.row, t.col))
            seen_rows.add((t.row, t.sym))
            seen_cols.add((t.col, t.sym))

    @classmethod
    def from_triples(
        cls, order: int, triples: Iterable[tuple[int, int, int]]
    ) -> "PartialLatinSquare":
        """Strict constructor: also requires every symbol to be < order."""
        entries = tuple(Triple(*t) for t in triples)
        for t in entries:
            if t.sym >= order:
                raise RangeError(
                    f"symbol {t.sym} out of range for order {order} (triple {t})"
                )
        return cls(order, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Optional[int]]]) -> "PartialLatinSquare":
        """Build from a row-major grid; ``None`` marks an empty cell."""
        n = len(rows)
        triples = []
        for r, row in enumerate(rows):
            if len(row) != n:
                raise RangeError(f"row {r} has {len(row)} cells, expected {n}")
            for c, e in enumerate(row):
                if e is not None:
                    triples.append((r, c, e))
        return cls.from_triples(n, triples)

    # -- basic views ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> frozenset[tuple[int, int]]:
        """The set of occupied cells S_P."""
        return frozenset((t.row, t.col) for t in self.entries)

    def cell_map(self) -> dict[tuple[int, int], int]:
        return {(t.row, t.col): t.sym for t in self.entries}

    def to_rows(self) -> list[list[Optional[int]]]:
        grid: list[list[Optional[int]]] = [[None] * self.order for _ in range(self.order)]
        for t in self.entries:
            grid[t.row][t.col] = t.sym
        return grid

    def symbol_at(self, row: int, col: int) -> Optional[int]:
        for t in self.entries:
            if t.row == row and t.col == col:
                return t.sym
            if t.row > row:
                break
        return None

    def row_entries(self, row: int) -> set[int]:
        return {t.sym for t in self.entries if t.row == row}

    def col_entries(self, col: int) -> set[int]:
        return {t.sym for t in self.entries if t.col == col}

    def symbols(self) -> set[int]:
        return {t.sym for t in self.entries}

    @property
    def is_full(self) -> bool:
        return len(self.entries) == self.order * self.order

    def is_latin_square(self) -> bool:
        """Full and every symbol in range: each row/column is a permutation."""
        return self.is_full and all(t.sym < self.order for t in self.entries)

    def least(self) -> Triple:
        """The earliest entry in the cell order."""
        if not self.entries:
            raise EmptySquareError("least() of an empty square")
        return self.entries[0]

    def greatest(self) -> Triple:
        if not self.entries:
            raise EmptySquareError("greatest() of an empty square")
        return self.entries[-1]

    # -- set-like operations -------------------------------------------

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.entries)

    def __contains__(self, triple: object) -> bool:
        return triple in set(self.entries)

    def restrict(self, cells: Iterable[tuple[int, int]]) -> "PartialLatinSquare":
        """Keep only the entries whose cell lies in ``cells``."""
        keep = set(cells)
        return PartialLatinSquare(
            self.order, tuple(t for t in self.entries if (t.row, t.col) in keep)
        )

    def difference(self, other: "PartialLatinSquare") -> "PartialLatinSquare":
        drop = set(other.entries)
        return PartialLatinSquare(
            self.order, tuple(t for t in self.entries if t not in drop)
        )

    def union(self, other: "PartialLatinSquare") -> "PartialLatinSquare":
        if other.order != self.order:
            raise RangeError("union of squares of different orders")
        return PartialLatinSquare(self.order, tuple(set(self.entries) | set(other.entries)))

    def remove(self, triple: Triple) -> "PartialLatinSquare":
        if triple not in self:
            raise RangeError(f"{triple} not present")
        return PartialLatinSquare(
            self.order, tuple(t for t in self.entries if t != triple)
        )

    def issubset(self, other: "PartialLatinSquare") -> bool:
        return set(self.entries) <= set(other.entries)


def empty_square(order: int) -> PartialLatinSquare:
    return PartialLatinSquare(order, ())


# -- block algebra -----------------------------------------------------


def shift_symbols(square: PartialLatinSquare, steps: int) -> PartialLatinSquare:
    """P^r: add steps * order to every symbol.

    The result usually carries symbols >= order; it is still a valid value
    of PartialLatinSquare and is meant to be used as a block in
    ``compose_blocks``.
    """
    if steps < 0:
        raise RangeError("symbol shift must be non-negative")
    off = steps * square.order
    return PartialLatinSquare(
        square.order, tuple(Triple(t.row, t.col, t.sym + off) for t in square.entries)
    )


def compose_blocks(
    top_left: PartialLatinSquare,
    top_right: PartialLatinSquare,
    bottom_left: PartialLatinSquare,
    bottom_right: PartialLatinSquare,
) -> PartialLatinSquare:
    """[A, B; C, D]: assemble four order-n blocks into an order-2n square.

    Every block keeps its own symbols, so shifted blocks (B = X^1 etc.) give
    the doubled square its upper symbol range.  Raises ConflictError if the
    assembled triples violate the latin conditions.
    """
    n = top_left.order
    for blk in (top_right, bottom_left, bottom_right):
        if blk.order != n:
            raise RangeError("all four blocks must have the same order")
    triples: list[Triple] = []
    for block, (dr, dc) in (
        (top_left, (0, 0)),
        (top_right, (0, n)),
        (bottom_left, (n, 0)),
        (bottom_right, (n, n)),
    ):
        triples.extend(Triple(t.row + dr, t.col + dc, t.sym) for t in block.entries)
    return PartialLatinSquare(2 * n, tuple(triples))


def subsquare(
    square: PartialLatinSquare, top: int, left: int, size: int
) -> PartialLatinSquare:
    """Entries of the size x size window at (top, left), keeping absolute
    coordinates and the ambient order."""
    if not (0 <= top and 0 <= left and top + size <= square.order and left + size <= square.order):
        raise RangeError(
            f"window {size}x{size} at ({top},{left}) exceeds order {square.order}"
        )
    return square.restrict(
        (r, c) for r in range(top, top + size) for c in range(left, left + size)
    )


def rebase(
    square: PartialLatinSquare,
    row_offset: int,
    col_offset: int,
    sym_offset: int = 0,
    order: Optional[int] = None,
) -> PartialLatinSquare:
    """Translate entries by subtracting the offsets, re-rooting a subsquare
    at the origin.  ``order`` defaults to the ambient order; pass the window
    size to obtain a standalone block."""
    new_order = square.order if order is None else order
    triples = []
    for t in square.entries:
        r, c, e = t.row - row_offset, t.col - col_offset, t.sym - sym_offset
        if r < 0 or c < 0 or e < 0:
            raise RangeError(f"rebasing {t} by ({row_offset},{col_offset},{sym_offset}) goes negative")
        triples.append(Triple(r, c, e))
    return PartialLatinSquare(new_order, tuple(triples))


# -- isotopisms --------------------------------------------------------


def _check_permutation(perm: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    p = tuple(perm)
    if sorted(p) != list(range(n)):
        raise RangeError(f"{what} is not a permutation of 0..{n - 1}: {p}")
    return p


@dataclass(frozen=True)
class Isotopism:
    """A triple of permutations (alpha, beta, gamma) acting on rows, columns
    and symbols: (r, c; e) |-> (alpha[r], beta[c]; gamma[e])."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.alpha)
        object.__setattr__(self, "alpha", _check_permutation(self.alpha, n, "alpha"))
        object.__setattr__(self, "beta", _check_permutation(self.beta, len(self.beta), "beta"))
        object.__setattr__(self, "gamma", _check_permutation(self.gamma, len(self.gamma), "gamma"))
        if not (len(self.alpha) == len(self.beta) == len(self.gamma)):
            raise RangeError("alpha, beta, gamma must have equal degree")

    @property
    def degree(self) -> int:
        return len(self.alpha)

    @classmethod
    def identity(cls, n: int) -> "Isotopism":
        ident = tuple(range(n))
        return cls(ident, ident, ident)

    def inverse(self) -> "Isotopism":
        def inv(p: tuple[int, ...]) -> tuple[int, ...]:
            out = [0] * len(p)
            for i, v in enumerate(p):
                out[v] = i
            return tuple(out)

        return Isotopism(inv(self.alpha), inv(self.beta), inv(self.gamma))

    def __call__(self, square: PartialLatinSquare) -> PartialLatinSquare:
        return apply_isotopism(square, self)


def apply_isotopism(square: PartialLatinSquare, iso: Isotopism) -> PartialLatinSquare:
    if iso.degree != square.order:
        raise RangeError(
            f"isotopism degree {iso.degree} does not match order {square.order}"
        )
    triples = []
    for t in square.entries:
        if t.sym >= iso.degree:
            raise RangeError(f"symbol {t.sym} of {t} outside isotopism degree")
        triples.append(Triple(iso.alpha[t.row], iso.beta[t.col], iso.gamma[t.sym]))
    return PartialLatinSquare(square.order, tuple(triples))


def _swap(n: int, i: int, j: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def row_swap_isotopism(n: int, k: int, kp: int) -> Isotopism:
    """alpha_{k,k'}: exchange rows k and k', fix columns and symbols."""
    if not (0 <= k < n and 0 <= kp < n) or k == kp:
        raise RangeError(f"invalid row swap ({k},{kp}) for order {n}")
    ident = tuple(range(n))
    return Isotopism(_swap(n, k, kp), ident, ident)


def multi_swap_isotopism(n: int, band_indices: Iterable[int]) -> Isotopism:
    """Exchange rows 4k+1 and 4k+2 for every k in band_indices."""
    alpha = list(range(n))
    for k in band_indices:
        i, j = 4 * k + 1, 4 * k + 2
        if k < 0 or j >= n:
            raise RangeError(f"band {k} does not fit in order {n}")
        alpha[i], alpha[j] = alpha[j], alpha[i]
    ident = tuple(range(n))
    return Isotopism(tuple(alpha), ident, ident)


# -- similarity --------------------------------------------------------


@dataclass(frozen=True)
class Similarity:
    """Witness that P ~ Q: monotone row/column relabellings plus an
    arbitrary symbol bijection carrying P onto Q."""

    row_map: dict[int, int] = field(compare=False)
    col_map: dict[int, int] = field(compare=False)
    sym_map: dict[int, int] = field(compare=False)


def is_similar(p: PartialLatinSquare, q: PartialLatinSquare) -> Optional[Similarity]:
    """Return a Similarity carrying p onto q, or None.

    The row and column bijections are forced: they must be monotone maps
    between the occupied row (resp. column) index sets, so the i-th smallest
    occupied row of p maps to the i-th smallest occupied row of q.  The
    symbol bijection is unconstrained; it exists iff the forced cell
    correspondence is symbol-consistent and injective.
    """
    if p.size != q.size:
        return None
    if p.size == 0:
        return Similarity({}, {}, {})
    p_rows = sorted({t.row for t in p.entries})
    q_rows = sorted({t.row for t in q.entries})
    p_cols = sorted({t.col for t in p.entries})
    q_cols = sorted({t.col for t in q.entries})
    if len(p_rows) != len(q_rows) or len(p_cols) != len(q_cols):
        return None
    row_map = dict(zip(p_rows, q_rows))
    col_map = dict(zip(p_cols, q_cols))
    q_cells = q.cell_map()
    sym_map: dict[int, int] = {}
    used: set[int] = set()
    for t in p.entries:
        target = q_cells.get((row_map[t.row], col_map[t.col]))
        if target is None:
            return None
        if t.sym in sym_map:
            if sym_map[t.sym] != target:
                return None
        else:
            if target in used:
                return None
            sym_map[t.sym] = target
            used.add(target)
    return Similarity(row_map, col_map, sym_map)


# -- cell orders -------------------------------------------------------


@dataclass(frozen=True)
class CellOrder:
    """A ranking of cells: ``cells[i]`` is the cell of rank i+1.

    Cell orders drive the greedy deletion scan.  They may rank any distinct
    subset of the order-n grid; ``restrict`` produces the induced ranking on
    a smaller cell set.
    """

    order: int
    cells: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for (r, c) in self.cells:
            if not (0 <= r < self.order and 0 <= c < self.order):
                raise RangeError(f"cell ({r},{c}) outside order-{self.order} grid")
            if (r, c) in seen:
                raise RangeError(f"cell ({r},{c}) ranked twice")
            seen.add((r, c))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.cells)

    def rank(self, cell: tuple[int, int]) -> int:
        """1-based rank of a cell; RangeError if unranked."""
        try:
            return self.cells.index(cell) + 1
        except ValueError:
            raise RangeError(f"cell {cell} is not ranked") from None

    def restrict(self, cells: Iterable[tuple[int, int]]) -> "CellOrder":
        keep = set(cells)
        return CellOrder(self.order, tuple(c for c in self.cells if c in keep))
