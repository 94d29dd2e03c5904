"""Completion machinery for partial latin squares.

Candidate sets use only row/column elimination.  The backtracking counter
is deterministic: forced cells are filled by propagation, branch cells are
chosen by fewest candidates (earliest cell in reading order on ties) and
symbols are tried in ascending order.  Squares handed to the solver must
use symbols below their order.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import LatinSetError, PartialLatinSquare, RangeError, Triple


class NoCompletionError(LatinSetError):
    """The partial square admits no completion."""


class NotUniqueError(LatinSetError):
    """More than one completion exists; carries two distinct witnesses."""

    def __init__(self, first: PartialLatinSquare, second: PartialLatinSquare):
        super().__init__("completion is not unique")
        self.first = first
        self.second = second


class StuckError(LatinSetError):
    """Singleton propagation stalled; carries the stalled partial square."""

    def __init__(self, partial: PartialLatinSquare, steps: tuple[Triple, ...]):
        super().__init__(f"propagation stuck after {len(steps)} placements")
        self.partial = partial
        self.steps = steps


class NotUniquelyCompletableError(LatinSetError):
    """An operation requiring unique completability was given a square
    with zero or several completions."""


@dataclass(frozen=True)
class AlternativesGrid:
    """Per-cell candidate sets over a region of cells."""

    order: int
    region: tuple[tuple[int, int], ...]
    candidates: dict[tuple[int, int], frozenset[int]]

    def __getitem__(self, cell: tuple[int, int]) -> frozenset[int]:
        return self.candidates[cell]


@dataclass(frozen=True)
class CompletionTrace:
    """A deterministic propagation run: the forced placements in the order
    they were made, and the square they produced.

    Replaying ``steps`` from ``start`` reproduces ``result``; each step was
    the unique candidate of its cell at the moment it was placed.
    """

    start: PartialLatinSquare
    steps: tuple[Triple, ...]
    result: PartialLatinSquare


def alternatives(
    square: PartialLatinSquare,
    region: Optional[Iterable[tuple[int, int]]] = None,
) -> AlternativesGrid:
    """Candidate symbols per cell: those absent from the cell's row and
    column.  The region defaults to all empty cells; filled cells in an
    explicit region get an empty candidate set."""
    n = square.order
    row_used, col_used, filled = _masks(square)
    if region is None:
        cells = tuple(
            (r, c) for r in range(n) for c in range(n) if (r, c) not in filled
        )
    else:
        cells = tuple(region)
        for (r, c) in cells:
            if not (0 <= r < n and 0 <= c < n):
                raise RangeError(f"region cell ({r},{c}) outside order-{n} grid")
    full = (1 << n) - 1
    cands = {}
    for (r, c) in cells:
        if (r, c) in filled:
            cands[(r, c)] = frozenset()
        else:
            cands[(r, c)] = _mask_to_set(full & ~(row_used[r] | col_used[c]))
    return AlternativesGrid(n, cells, cands)


def _masks(square: PartialLatinSquare):
    n = square.order
    row_used = [0] * n
    col_used = [0] * n
    filled = {}
    for t in square.entries:
        if t.sym >= n:
            raise RangeError(f"symbol {t.sym} of {t} is not below the order {n}")
        bit = 1 << t.sym
        row_used[t.row] |= bit
        col_used[t.col] |= bit
        filled[(t.row, t.col)] = t.sym
    return row_used, col_used, filled


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


# -- backtracking counter ----------------------------------------------

_DEAD, _SOLVED, _BRANCH = 0, 1, 2


class _State:
    __slots__ = ("n", "full", "grid", "rows", "cols", "trail", "empties")

    def __init__(self, square: PartialLatinSquare):
        n = square.order
        self.n = n
        self.full = (1 << n) - 1
        self.grid = [-1] * (n * n)
        self.rows = [0] * n
        self.cols = [0] * n
        self.trail: list[int] = []
        for t in square.entries:
            if t.sym >= n:
                raise RangeError(f"symbol {t.sym} of {t} is not below the order {n}")
            self.grid[t.row * n + t.col] = t.sym
            bit = 1 << t.sym
            self.rows[t.row] |= bit
            self.cols[t.col] |= bit
        self.empties = n * n - square.size

    def place(self, idx: int, sym: int) -> None:
        self.grid[idx] = sym
        bit = 1 << sym
        r, c = divmod(idx, self.n)
        self.rows[r] |= bit
        self.cols[c] |= bit
        self.trail.append(idx)
        self.empties -= 1

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            idx = self.trail.pop()
            sym = self.grid[idx]
            self.grid[idx] = -1
            bit = 1 << sym
            r, c = divmod(idx, self.n)
            self.rows[r] &= ~bit
            self.cols[c] &= ~bit
            self.empties += 1

    def neighbours(self, idx: int) -> list[int]:
        r, c = divmod(idx, self.n)
        row0 = r * self.n
        out = [row0 + cc for cc in range(self.n) if self.grid[row0 + cc] < 0]
        out.extend(rr * self.n + c for rr in range(self.n) if self.grid[rr * self.n + c] < 0)
        return out

    def propagate(self, queue: list[int]) -> int:
        """Fill forced cells reachable from the queued ones."""
        grid, rows, cols, n, full = self.grid, self.rows, self.cols, self.n, self.full
        while queue:
            idx = queue.pop()
            if grid[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            cand = full & ~(rows[r] | cols[c])
            if cand == 0:
                return _DEAD
            if cand & (cand - 1) == 0:
                self.place(idx, cand.bit_length() - 1)
                queue.extend(self.neighbours(idx))
        return _SOLVED if self.empties == 0 else _BRANCH

    def pick(self) -> tuple[int, int]:
        """Branch cell: fewest candidates, earliest in reading order."""
        grid, rows, cols, n, full = self.grid, self.rows, self.cols, self.n, self.full
        best_idx, best_cand, best_count = -1, 0, n + 1
        for idx in range(n * n):
            if grid[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            cand = full & ~(rows[r] | cols[c])
            k = cand.bit_count()
            if k < best_count:
                best_idx, best_cand, best_count = idx, cand, k
                if k <= 2:
                    break
        return best_idx, best_cand

    def snapshot(self) -> PartialLatinSquare:
        n = self.n
        return PartialLatinSquare(
            n,
            tuple(
                Triple(idx // n, idx % n, sym)
                for idx, sym in enumerate(self.grid)
                if sym >= 0
            ),
        )


def _ensure_recursion_room(n: int) -> None:
    need = n * n + 128
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _search(
    state: _State, cap: Optional[int], collect: Optional[list[PartialLatinSquare]]
) -> int:
    """Count completions, saturating at cap; optionally collect the first
    solutions found (up to cap, or up to 2 when cap is None)."""
    _ensure_recursion_room(state.n)
    found = 0
    keep = cap if cap is not None else 2

    def dfs(queue: list[int]) -> None:
        nonlocal found
        mark = len(state.trail)
        status = state.propagate(queue)
        if status == _DEAD:
            state.undo_to(mark)
            return
        if status == _SOLVED:
            found += 1
            if collect is not None and len(collect) < keep:
                collect.append(state.snapshot())
            state.undo_to(mark)
            return
        idx, cand = state.pick()
        while cand:
            low = cand & -cand
            cand ^= low
            inner = len(state.trail)
            state.place(idx, low.bit_length() - 1)
            dfs(state.neighbours(idx))
            state.undo_to(inner)
            if cap is not None and found >= cap:
                break
        state.undo_to(mark)

    seed = [i for i, v in enumerate(state.grid) if v < 0]
    seed.reverse()  # LIFO: inspect early cells first
    dfs(seed)
    return found


def count_completions(square: PartialLatinSquare, cap: Optional[int] = 2) -> int:
    """Number of completions to a full latin square, saturating at ``cap``
    (pass None to count exactly)."""
    if cap is not None and cap < 1:
        raise RangeError("cap must be positive")
    return _search(_State(square), cap, None)


def has_unique_completion(square: PartialLatinSquare) -> bool:
    return count_completions(square, cap=2) == 1


def complete_unique(square: PartialLatinSquare) -> PartialLatinSquare:
    """The unique completion; NoCompletionError / NotUniqueError otherwise,
    the latter carrying two distinct completions as witnesses."""
    sols: list[PartialLatinSquare] = []
    found = _search(_State(square), 2, sols)
    if found == 0:
        raise NoCompletionError("no completion exists")
    if found > 1:
        raise NotUniqueError(sols[0], sols[1])
    return sols[0]


# -- singleton propagation ----------------------------------------------


def strong_complete(square: PartialLatinSquare) -> CompletionTrace:
    """Complete by singleton propagation alone.

    Sweeps the grid in reading order, placing every cell whose candidate
    set is a singleton, until the square is full; raises StuckError (with
    the stalled partial) if a full sweep places nothing.  Propagation is
    confluent, so the result does not depend on the sweep policy; the
    recorded step order is this sweep's.
    """
    state = _State(square)
    steps: list[Triple] = []
    n, full = state.n, state.full
    while state.empties:
        progressed = False
        for idx in range(n * n):
            if state.grid[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            cand = full & ~(state.rows[r] | state.cols[c])
            if cand and cand & (cand - 1) == 0:
                sym = cand.bit_length() - 1
                state.place(idx, sym)
                steps.append(Triple(r, c, sym))
                progressed = True
        if not progressed:
            raise StuckError(state.snapshot(), tuple(steps))
    return CompletionTrace(square, tuple(steps), state.snapshot())


def strong_complete_region(
    square: PartialLatinSquare,
    rows: Iterable[int],
    cols: Iterable[int],
) -> CompletionTrace:
    """Propagate singletons, but only into cells of the given row/column
    product region (candidates are still computed against the whole
    square).  Succeeds when every region cell is filled; an empty region
    succeeds with an empty trace."""
    state = _State(square)
    n, full = state.n, state.full
    row_set, col_set = sorted(set(rows)), sorted(set(cols))
    for r in row_set:
        if not 0 <= r < n:
            raise RangeError(f"row {r} outside order-{n} grid")
    for c in col_set:
        if not 0 <= c < n:
            raise RangeError(f"column {c} outside order-{n} grid")
    region = [r * n + c for r in row_set for c in col_set]
    steps: list[Triple] = []
    while True:
        remaining = [idx for idx in region if state.grid[idx] < 0]
        if not remaining:
            return CompletionTrace(square, tuple(steps), state.snapshot())
        progressed = False
        for idx in remaining:
            if state.grid[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            cand = full & ~(state.rows[r] | state.cols[c])
            if cand and cand & (cand - 1) == 0:
                sym = cand.bit_length() - 1
                state.place(idx, sym)
                steps.append(Triple(r, c, sym))
                progressed = True
        if not progressed:
            raise StuckError(state.snapshot(), tuple(steps))


def completes_top_down(square: PartialLatinSquare) -> tuple[bool, CompletionTrace]:
    """Whether row-by-row propagation completes the square.

    Requires the square to be uniquely completable (else
    NotUniquelyCompletableError).  Rows are processed top to bottom; within
    a row, singleton cells are filled to a fixpoint before moving on.  The
    answer is True iff every row fills completely; on failure the trace
    stops at the first stalled row.
    """
    if count_completions(square, cap=2) != 1:
        raise NotUniquelyCompletableError(
            "top-down completion is only defined for uniquely completable squares"
        )
    state = _State(square)
    n, full = state.n, state.full
    steps: list[Triple] = []
    for r in range(n):
        while True:
            progressed = False
            for c in range(n):
                idx = r * n + c
                if state.grid[idx] >= 0:
                    continue
                cand = full & ~(state.rows[r] | state.cols[c])
                if cand and cand & (cand - 1) == 0:
                    sym = cand.bit_length() - 1
                    state.place(idx, sym)
                    steps.append(Triple(r, c, sym))
                    progressed = True
            if not progressed:
                break
        if any(state.grid[r * n + c] < 0 for c in range(n)):
            return False, CompletionTrace(square, tuple(steps), state.snapshot())
    return True, CompletionTrace(square, tuple(steps), state.snapshot())


def is_critical_set(square: PartialLatinSquare) -> bool:
    """Uniquely completable, and no entry can be dropped without losing
    uniqueness."""
    if count_completions(square, cap=2) != 1:
        return False
    for t in square.entries:
        rest = PartialLatinSquare(
            square.order, tuple(u for u in square.entries if u != t)
        )
        if count_completions(rest, cap=2) == 1:
            return False
    return True
