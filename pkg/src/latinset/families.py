"""The recursive families of critical sets for row-swapped XOR squares.

Order-4 and order-8 greedy critical sets are shipped as grid fixtures; the
builders E, A and G compose them recursively into critical sets for any
order 2^s, following the block recursions

    E(k,k')_t = [L^0 | E(k-d,k'-d)^1 ; L^1 | L^0]            k,k' in [2d,3d)
                [E(k-2d,k'-2d)^0 | L^1 ; E^1 | E^0]          k,k' in [3d,4d)
    A(k,k')_t = [A(k,k')^0 | A(k,k')^1 ; L^1 | L^0]          k,k' in [0,d)
                [L^0 | L^1 ; A(k-d,k'-d)^1 | A(k-d,k'-d)^0]  k,k' in [d,2d)
    G(k,k',s) = [A(k,k')^0 | G(k,k',s-1)^1 ; P^1 | P^0]      k,k' < n/2
                [E(k,k')^0 | P^1 ; G(k-n/2,k'-n/2,s-1)^1 | G^0]  otherwise

with d = 2^(t-1) and blocks of order 2^(s-1).  Swap pairs (k,k') must stay
inside one d-block at every level; a pair outside a builder's domain raises
KeyError.

One wrinkle: the greedy scan does not treat an A-block and its shifted
sibling symmetrically.  For swap offsets (1,3) and (2,3) the shifted copy
keeps every cell, so build_A substitutes a completely filled block there;
see `_saturates_when_shifted` for the exact rule.  Without this the
composed G sets would fall short of the greedy output from order 16 up.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .core import (
    PartialLatinSquare,
    RangeError,
    apply_isotopism,
    compose_blocks,
    rebase,
    row_swap_isotopism,
    shift_symbols,
    subsquare,
)
from .gridio import load_grid
from .solver import alternatives
from .twogroup import build_L, build_P

#: Swap pairs (k, k') in the upper half of N_8 with printed base tables.
GAMMA: tuple[tuple[int, int], ...] = ((4, 5), (4, 6), (5, 6), (5, 7), (6, 7))

#: Swap pairs in the lower half.  (0, 3) has base data but sits outside the
#: aligned-block condition below, so it never appears in theorem_pairs.
LAMBDA: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

FIXTURES_ENV = "LATINSET_FIXTURES"


def is_theorem_pair(k: int, kp: int, s: int) -> bool:
    """Row-swap pairs covered by the construction: |k-k'| < 3 and both rows
    inside one aligned block of four."""
    n = 1 << s
    if not (0 <= k < kp < n):
        return False
    return kp - k < 3 and k // 4 == kp // 4


def is_conjecture_pair(k: int, kp: int, s: int) -> bool:
    """The wider family the computer search covers: |k-k'| < 3 only."""
    n = 1 << s
    return 0 <= k < kp < n and kp - k < 3


def theorem_pairs(s: int) -> list[tuple[int, int]]:
    n = 1 << s
    return [(k, kp) for k in range(n) for kp in range(k + 1, n) if is_theorem_pair(k, kp, s)]


def conjecture_pairs(s: int) -> list[tuple[int, int]]:
    n = 1 << s
    return [(k, kp) for k in range(n) for kp in range(k + 1, n) if is_conjecture_pair(k, kp, s)]


# -- fixtures ------------------------------------------------------------


def fixtures_dir() -> Path:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("latinset") / "fixtures"))


@lru_cache(maxsize=None)
def load_fixture(name: str) -> tuple[PartialLatinSquare, Optional[PartialLatinSquare]]:
    """A fixture grid by base name: (square, marked-part-or-None)."""
    path = fixtures_dir() / f"{name}.grid"
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r} at {path}")
    return load_grid(path)


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixtures_dir().glob("*.grid"))


def base_gcs(k: int, kp: int, s: int) -> PartialLatinSquare:
    """The tabulated greedy critical set of the order-2^s square with rows
    k and k' exchanged (s = 2 or 3)."""
    if s not in (2, 3):
        raise KeyError(f"no tabulated critical sets at s={s}")
    marked = load_fixture(f"gcs_a{k}{kp}_l{s}")[1]
    assert marked is not None
    return marked


def base_square(k: int, kp: int, s: int) -> PartialLatinSquare:
    """The ambient row-swapped square of a tabulated critical set."""
    if s not in (2, 3):
        raise KeyError(f"no tabulated critical sets at s={s}")
    return load_fixture(f"gcs_a{k}{kp}_l{s}")[0]


def _quadrant(square: PartialLatinSquare) -> PartialLatinSquare:
    """Top-left quarter as a standalone block."""
    half = square.order // 2
    return rebase(subsquare(square, 0, 0, half), 0, 0, 0, order=half)


def base_E2(k: int, kp: int) -> PartialLatinSquare:
    if (k, kp) not in GAMMA:
        raise KeyError(f"E({k},{kp})_2 is only defined for pairs in {GAMMA}")
    return _quadrant(base_gcs(k, kp, 3))


def base_A2(k: int, kp: int) -> PartialLatinSquare:
    if (k, kp) not in LAMBDA:
        raise KeyError(f"A({k},{kp})_2 is only defined for pairs in {LAMBDA}")
    return _quadrant(base_gcs(k, kp, 3))


# -- recursive builders ---------------------------------------------------


def build_E(k: int, kp: int, t: int) -> PartialLatinSquare:
    """E(k,k')_t, an order-2^t block for swap rows 2^t <= k < k' < 2^(t+1)."""
    if t == 2:
        return base_E2(k, kp)
    if t < 2:
        raise KeyError(f"E is not defined below t=2 (got t={t})")
    d = 1 << (t - 1)
    l_prev = build_L(t - 1)
    if 2 * d <= k < kp < 3 * d:
        e_prev = build_E(k - d, kp - d, t - 1)
        return compose_blocks(l_prev, shift_symbols(e_prev, 1), shift_symbols(l_prev, 1), l_prev)
    if 3 * d <= k < kp < 4 * d:
        e_prev = build_E(k - 2 * d, kp - 2 * d, t - 1)
        return compose_blocks(e_prev, shift_symbols(l_prev, 1), shift_symbols(e_prev, 1), e_prev)
    raise KeyError(
        f"E({k},{kp})_{t}: rows must lie in one half of [{2 * d},{4 * d})"
    )


def _saturates_when_shifted(k: int, kp: int, t: int) -> bool:
    """Whether a shifted copy of A(k,k')_t appears fully filled in the greedy
    output rather than as the recursive pattern.

    The scan treats the original block and its symbol-shifted sibling
    asymmetrically: for swap offsets (1,3) and (2,3) the shifted copy is
    never thinned at all.  The effect propagates up through consecutive
    upper-half reductions, so a whole shifted A-block saturates exactly when
    peeling its upper-half cases bottoms out at one of those two offsets.
    """
    while t > 2:
        d = 1 << (t - 1)
        if k < d:
            return False
        k, kp, t = k - d, kp - d, t - 1
    return (k, kp) in ((1, 3), (2, 3))


def _full_block(k: int, kp: int, t: int) -> PartialLatinSquare:
    """The completely filled order-2^t block: the XOR square with rows k and
    k' exchanged."""
    return apply_isotopism(build_L(t), row_swap_isotopism(1 << t, k, kp))


def build_A(k: int, kp: int, t: int) -> PartialLatinSquare:
    """A(k,k')_t, an order-2^t block for swap rows 0 <= k < k' < 2^t.

    Shifted child blocks saturate to full squares for the offsets described
    in `_saturates_when_shifted`; unshifted children always recurse.
    """
    if t == 2:
        return base_A2(k, kp)
    if t < 2:
        raise KeyError(f"A is not defined below t=2 (got t={t})")
    d = 1 << (t - 1)
    l_prev = build_L(t - 1)
    if 0 <= k < kp < d:
        a_prev = build_A(k, kp, t - 1)
        sibling = _full_block(k, kp, t - 1) if _saturates_when_shifted(k, kp, t - 1) else a_prev
        return compose_blocks(a_prev, shift_symbols(sibling, 1), shift_symbols(l_prev, 1), l_prev)
    if d <= k < kp < 2 * d:
        a_prev = build_A(k - d, kp - d, t - 1)
        return compose_blocks(l_prev, shift_symbols(l_prev, 1), shift_symbols(a_prev, 1), a_prev)
    raise KeyError(
        f"A({k},{kp})_{t}: rows must lie in one half of [0,{2 * d})"
    )


def build_G(k: int, kp: int, s: int) -> PartialLatinSquare:
    """The constructed critical set of order 2^s for the square with rows k
    and k' exchanged.  At s = 2 and 3 these are the tabulated sets."""
    if s in (2, 3):
        pairs = LAMBDA if s == 2 else tuple(GAMMA) + tuple(LAMBDA)
        if (k, kp) not in pairs:
            raise KeyError(f"no tabulated G({k},{kp},{s})")
        return base_gcs(k, kp, s)
    if s < 2:
        raise KeyError(f"G is not defined below s=2 (got s={s})")
    half = 1 << (s - 1)
    p_prev = build_P(s - 1)
    if kp < half:
        a_block = build_A(k, kp, s - 1)
        g_prev = build_G(k, kp, s - 1)
        return compose_blocks(
            a_block, shift_symbols(g_prev, 1), shift_symbols(p_prev, 1), p_prev
        )
    if k >= half:
        e_block = build_E(k, kp, s - 1)
        g_prev = build_G(k - half, kp - half, s - 1)
        return compose_blocks(
            e_block, shift_symbols(p_prev, 1), shift_symbols(g_prev, 1), g_prev
        )
    raise KeyError(f"G({k},{kp},{s}): rows must lie in one half of the square")


# -- the order-8 blocking squares ----------------------------------------


def build_U(k: int, kp: int) -> PartialLatinSquare:
    """[E(k,k')^0 | P^1 ; E(k,k')^1 | P^0], order 8."""
    e2 = base_E2(k, kp)
    p2 = build_P(2)
    return compose_blocks(e2, shift_symbols(p2, 1), shift_symbols(e2, 1), p2)


def build_V(k: int, kp: int) -> PartialLatinSquare:
    """[E(k,k')^0 | P^1 ; P^1 | E(k,k')^0], order 8."""
    e2 = base_E2(k, kp)
    p2_up = shift_symbols(build_P(2), 1)
    return compose_blocks(e2, p2_up, p2_up, e2)


def check_blocking_U(k: int, kp: int) -> bool:
    """No upper-half symbol is ever a candidate in the top-left quarter of
    U(k,k')."""
    u = build_U(k, kp)
    grid = alternatives(u, region=[(r, c) for r in range(4) for c in range(4)])
    upper = set(range(4, 8))
    return all(not (grid[cell] & upper) for cell in grid.region)


def check_blocking_V(k: int, kp: int) -> bool:
    """No lower-half symbol is ever a candidate in the top-right quarter of
    V(k,k')."""
    v = build_V(k, kp)
    grid = alternatives(v, region=[(r, c) for r in range(4) for c in range(4, 8)])
    lower = set(range(4))
    return all(not (grid[cell] & lower) for cell in grid.region)


# -- expansion traces -----------------------------------------------------


@dataclass(frozen=True)
class ExpansionNode:
    """One step of the recursive unfolding of a constructed set."""

    name: str
    formula: str
    children: tuple["ExpansionNode", ...] = ()


def _terminal(name: str, note: str) -> ExpansionNode:
    return ExpansionNode(name, note)


def expand_E(k: int, kp: int, t: int) -> ExpansionNode:
    name = f"E({k},{kp})_{t}"
    if t == 2:
        if (k, kp) not in GAMMA:
            raise KeyError(f"{name} has no base table")
        return _terminal(name, f"base table, {base_E2(k, kp).size} entries")
    d = 1 << (t - 1)
    if 2 * d <= k < kp < 3 * d:
        child = expand_E(k - d, kp - d, t - 1)
        formula = (
            f"[L_{t-1} | {child.name}^1 ; L^1_{t-1} | L_{t-1}]"
        )
        return ExpansionNode(name, formula, (child,))
    if 3 * d <= k < kp < 4 * d:
        child = expand_E(k - 2 * d, kp - 2 * d, t - 1)
        formula = f"[{child.name} | L^1_{t-1} ; {child.name}^1 | {child.name}]"
        return ExpansionNode(name, formula, (child,))
    raise KeyError(f"{name}: rows must lie in one half of [{2 * d},{4 * d})")


def expand_A(k: int, kp: int, t: int) -> ExpansionNode:
    name = f"A({k},{kp})_{t}"
    if t == 2:
        if (k, kp) not in LAMBDA:
            raise KeyError(f"{name} has no base table")
        return _terminal(name, f"base table, {base_A2(k, kp).size} entries")
    d = 1 << (t - 1)
    if 0 <= k < kp < d:
        child = expand_A(k, kp, t - 1)
        sib = f"F({k},{kp})_{t-1}" if _saturates_when_shifted(k, kp, t - 1) else child.name
        formula = f"[{child.name} | {sib}^1 ; L^1_{t-1} | L_{t-1}]"
        return ExpansionNode(name, formula, (child,))
    if d <= k < kp < 2 * d:
        child = expand_A(k - d, kp - d, t - 1)
        formula = f"[L_{t-1} | L^1_{t-1} ; {child.name}^1 | {child.name}]"
        return ExpansionNode(name, formula, (child,))
    raise KeyError(f"{name}: rows must lie in one half of [0,{2 * d})")


def expand_G(k: int, kp: int, s: int) -> ExpansionNode:
    name = f"G({k},{kp},{s})"
    if s in (2, 3):
        return _terminal(name, f"base table, {build_G(k, kp, s).size} entries")
    half = 1 << (s - 1)
    if kp < half:
        a_child = expand_A(k, kp, s - 1)
        g_child = expand_G(k, kp, s - 1)
        formula = f"[{a_child.name} | {g_child.name}^1 ; P^1_{s-1} | P_{s-1}]"
        return ExpansionNode(name, formula, (a_child, g_child))
    if k >= half:
        e_child = expand_E(k, kp, s - 1)
        g_child = expand_G(k - half, kp - half, s - 1)
        formula = f"[{e_child.name} | P^1_{s-1} ; {g_child.name}^1 | {g_child.name}]"
        return ExpansionNode(name, formula, (e_child, g_child))
    raise KeyError(f"{name}: rows must lie in one half of the square")


def render_expansion(node: ExpansionNode, indent: int = 0) -> str:
    lines = [f"{'  ' * indent}{node.name} = {node.formula}"]
    for child in node.children:
        lines.append(render_expansion(child, indent + 1))
    return "\n".join(lines)
