"""Critical sets in latin squares built from the XOR (abelian 2-group) family.

The package provides the squares themselves (`build_L`, `build_P`, row-swap
variants), a deterministic completion solver, the greedy critical-set
algorithm, trade/intercalate machinery, and the recursive E/A/G families
with their verification predicates.
"""
from .core import (
    CellOrder,
    ConflictError,
    EmptySquareError,
    Isotopism,
    LatinSetError,
    PartialLatinSquare,
    RangeError,
    Similarity,
    Triple,
    apply_isotopism,
    compose_blocks,
    empty_square,
    is_similar,
    multi_swap_isotopism,
    precedes,
    rebase,
    row_swap_isotopism,
    shift_symbols,
    subsquare,
)
from .families import (
    GAMMA,
    LAMBDA,
    build_A,
    build_E,
    build_G,
    build_U,
    build_V,
    check_blocking_U,
    check_blocking_V,
    conjecture_pairs,
    expand_G,
    is_conjecture_pair,
    is_theorem_pair,
    load_fixture,
    render_expansion,
    theorem_pairs,
)
from .greedy import cell_order_f0, gcs, ggcs, random_cell_order
from .gridio import (
    ParseError,
    load_grid,
    load_square,
    parse_grid,
    parse_json,
    render_grid,
    render_json,
    save_grid,
)
from .solver import (
    AlternativesGrid,
    CompletionTrace,
    NoCompletionError,
    NotUniqueError,
    NotUniquelyCompletableError,
    StuckError,
    alternatives,
    complete_unique,
    completes_top_down,
    count_completions,
    has_unique_completion,
    is_critical_set,
    strong_complete,
    strong_complete_region,
)
from .trades import (
    Intercalate,
    IdenticalSquaresError,
    NotCriticalSetError,
    enumerate_intercalates,
    intercalate_witness,
    is_2_critical,
    is_trade_pair,
    trade_from_squares,
    verify_gcs_characterization,
)
from .twogroup import build_H2, build_H2_hat, build_L, build_multiswap_G, build_P, double_square, doubling_seed

__version__ = "0.1.0"

__all__ = [
    "AlternativesGrid",
    "CellOrder",
    "CompletionTrace",
    "ConflictError",
    "EmptySquareError",
    "GAMMA",
    "Intercalate",
    "IdenticalSquaresError",
    "Isotopism",
    "LAMBDA",
    "LatinSetError",
    "NoCompletionError",
    "NotCriticalSetError",
    "NotUniqueError",
    "NotUniquelyCompletableError",
    "ParseError",
    "PartialLatinSquare",
    "RangeError",
    "Similarity",
    "StuckError",
    "Triple",
    "alternatives",
    "apply_isotopism",
    "build_A",
    "build_E",
    "build_G",
    "build_H2",
    "build_H2_hat",
    "build_L",
    "build_P",
    "build_U",
    "build_V",
    "build_multiswap_G",
    "cell_order_f0",
    "check_blocking_U",
    "check_blocking_V",
    "complete_unique",
    "completes_top_down",
    "compose_blocks",
    "conjecture_pairs",
    "count_completions",
    "double_square",
    "doubling_seed",
    "empty_square",
    "enumerate_intercalates",
    "expand_G",
    "gcs",
    "ggcs",
    "has_unique_completion",
    "intercalate_witness",
    "is_2_critical",
    "is_conjecture_pair",
    "is_critical_set",
    "is_similar",
    "is_theorem_pair",
    "is_trade_pair",
    "load_fixture",
    "load_grid",
    "load_square",
    "multi_swap_isotopism",
    "parse_grid",
    "parse_json",
    "precedes",
    "random_cell_order",
    "rebase",
    "render_expansion",
    "render_grid",
    "render_json",
    "row_swap_isotopism",
    "save_grid",
    "shift_symbols",
    "strong_complete",
    "strong_complete_region",
    "subsquare",
    "theorem_pairs",
    "trade_from_squares",
    "verify_gcs_characterization",
]
