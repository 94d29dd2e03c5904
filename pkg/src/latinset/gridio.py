"""Text and JSON serialization for (partial) latin squares.

Grid text: one line per row, whitespace-separated tokens, ``-`` for an empty
cell, a bare number for an entry, and ``(k)`` for an entry belonging to a
distinguished subset (a critical set shown inside its completion, say).
JSON: ``{"order": n, "entries": [[row, col, sym], ...]}``.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Optional, Union

from .core import LatinSetError, PartialLatinSquare, RangeError, Triple

_TOKEN = re.compile(r"^(?:-|(\d+)|\((\d+)\))$")


class ParseError(LatinSetError):
    """Malformed grid text or square JSON."""


def parse_grid(text: str) -> tuple[PartialLatinSquare, Optional[PartialLatinSquare]]:
    """Parse grid text into (square, marked).

    ``marked`` is the sub-square of parenthesised entries, or None when the
    text contains no parentheses.  The order is the number of non-blank
    lines; every line must carry that many tokens.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty grid text")
    n = len(lines)
    triples: list[Triple] = []
    marked: list[Triple] = []
    saw_marks = False
    for r, line in enumerate(lines):
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"line {r + 1} has {len(tokens)} tokens, expected {n}")
        for c, tok in enumerate(tokens):
            m = _TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad token {tok!r} at row {r}, column {c}")
            if m.group(1) is not None:
                triples.append(Triple(r, c, int(m.group(1))))
            elif m.group(2) is not None:
                t = Triple(r, c, int(m.group(2)))
                triples.append(t)
                marked.append(t)
                saw_marks = True
    square = PartialLatinSquare.from_triples(n, triples)
    return square, (PartialLatinSquare(n, tuple(marked)) if saw_marks else None)


def render_grid(
    square: PartialLatinSquare,
    marked: Optional[Union[PartialLatinSquare, Iterable[Triple]]] = None,
) -> str:
    """Render a square as aligned grid text, parenthesising ``marked``."""
    mark_set: set[Triple] = set()
    if marked is not None:
        mark_set = set(marked)
        for t in mark_set:
            if t not in square:
                raise RangeError(f"marked entry {t} is not in the square")
    n = square.order
    cells = square.cell_map()
    tokens: list[list[str]] = []
    for r in range(n):
        row = []
        for c in range(n):
            e = cells.get((r, c))
            if e is None:
                row.append("-")
            elif Triple(r, c, e) in mark_set:
                row.append(f"({e})")
            else:
                row.append(str(e))
        tokens.append(row)
    width = max(len(t) for row in tokens for t in row)
    return "\n".join(" ".join(t.rjust(width) for t in row) for row in tokens) + "\n"


def render_json(square: PartialLatinSquare, indent: Optional[int] = None) -> str:
    payload = {
        "order": square.order,
        "entries": [[t.row, t.col, t.sym] for t in square.entries],
    }
    return json.dumps(payload, indent=indent)


def parse_json(text: Union[str, dict]) -> PartialLatinSquare:
    data = json.loads(text) if isinstance(text, str) else text
    if not isinstance(data, dict):
        raise ParseError("square JSON must be an object")
    order = data.get("order")
    entries = data.get("entries")
    if not isinstance(order, int) or isinstance(order, bool):
        raise ParseError("'order' must be an integer")
    if not isinstance(entries, list):
        raise ParseError("'entries' must be a list")
    triples = []
    for item in entries:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 3
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"bad entry {item!r}: expected [row, col, sym]")
        triples.append(tuple(item))
    try:
        return PartialLatinSquare.from_triples(order, triples)
    except LatinSetError as exc:
        raise ParseError(str(exc)) from exc


def load_grid(path: Union[str, Path]) -> tuple[PartialLatinSquare, Optional[PartialLatinSquare]]:
    return parse_grid(Path(path).read_text())


def save_grid(
    path: Union[str, Path],
    square: PartialLatinSquare,
    marked: Optional[PartialLatinSquare] = None,
) -> None:
    Path(path).write_text(render_grid(square, marked))


def load_square(path: Union[str, Path]) -> PartialLatinSquare:
    """Load a square from either format, keyed on the file suffix."""
    p = Path(path)
    if p.suffix.lower() == ".json":
        return parse_json(p.read_text())
    return load_grid(p)[0]
